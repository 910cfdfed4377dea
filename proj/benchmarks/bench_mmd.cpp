#include <benchmark/benchmark.h>

#include "mmdnov/kernels.hpp"
#include "mmdnov/mmd.hpp"
#include "mmdnov/perm_test.hpp"
#include "mmdnov/study.hpp"

namespace {

mmdnov::EmbeddingMatrix sample(std::size_t n, std::size_t dim, double shift, std::uint64_t seed) {
  return mmdnov::generate_synthetic(mmdnov::SynthSpec::gaussian(std::vector<double>(dim, shift), 1.0, seed), n);
}

void BM_MedianHeuristic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = sample(n, 64, 0.0, 1);
  const auto y = sample(n, 64, 0.1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mmdnov::median_heuristic_sigma(x, y));
}
BENCHMARK(BM_MedianHeuristic)->Arg(50)->Arg(200)->Arg(400);

void BM_Mmd2Unbiased(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = sample(n, 64, 0.0, 1);
  const auto y = sample(n, 64, 0.1, 2);
  const auto spec = mmdnov::KernelSpec::rbf(8.0);
  for (auto _ : state) benchmark::DoNotOptimize(mmdnov::mmd2_unbiased(x, y, spec).value);
}
BENCHMARK(BM_Mmd2Unbiased)->Arg(50)->Arg(200)->Arg(400);

void BM_Mmd2Oracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = sample(n, 64, 0.0, 1);
  const auto y = sample(n, 64, 0.1, 2);
  const auto spec = mmdnov::KernelSpec::rbf(8.0);
  for (auto _ : state) benchmark::DoNotOptimize(mmdnov::mmd2_oracle(x, y, spec).value);
}
BENCHMARK(BM_Mmd2Oracle)->Arg(50)->Arg(200);

// Per-side sample size; 100 permutations per iteration.
void BM_PermutationTest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = sample(n, 64, 0.0, 1);
  const auto y = sample(n, 64, 0.1, 2);
  mmdnov::TestConfig cfg;
  cfg.permutations = 100;
  cfg.workers = mmdnov::WorkerCount(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(mmdnov::permutation_test(x, y, cfg).p_value);
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_PermutationTest)->Args({24, 1})->Args({100, 1})->Args({400, 1})->Args({400, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include "mmdnov/study.hpp"

#include <algorithm>

#include "mmdnov/error.hpp"
#include "mmdnov/rng.hpp"

namespace mmdnov {
namespace {

constexpr std::uint64_t kDrawStream = 0;
constexpr std::uint64_t kTestStream = 1;

std::vector<LabelPair> digit_pairs(std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<LabelPair> out;
  for (auto [a, b] : pairs) out.push_back({std::to_string(a), std::to_string(b)});
  return out;
}

}  // namespace

std::optional<std::vector<LabelPair>> pair_preset(std::string_view name) {
  if (name == "mnist-text") return digit_pairs({{0, 1}, {1, 7}, {2, 8}, {3, 5}, {4, 9}});
  if (name == "mnist-code") {
    return digit_pairs({{0, 1}, {1, 7}, {2, 8}, {3, 8}, {5, 8}, {2, 3}, {4, 9}, {3, 5}, {6, 8}});
  }
  return std::nullopt;
}

MmdMatrixResult mmd_matrix(const LabeledCorpus& corpus, const TestConfig& cfg, std::size_t sample_cap) {
  if (corpus.empty()) throw ConfigError("matrix study needs at least one label");
  cfg.validate();

  const std::size_t size = corpus.size();
  MmdMatrixResult out;
  out.labels = corpus.labels();
  out.mmd.assign(size, std::vector<Cell>(size));
  out.p_values.assign(size, std::vector<Cell>(size));
  out.sample_cap = sample_cap;
  out.config_echo = cfg;

  for (std::size_t i = 0; i < size; ++i) {
    const EmbeddingMatrix& xs = corpus[i].matrix;
    for (std::size_t j = i; j < size; ++j) {
      const EmbeddingMatrix& ys = corpus[j].matrix;
      Rng draw(derive_seed(cfg.seed, {i, j, kDrawStream}));

      EmbeddingMatrix x_sample;
      EmbeddingMatrix y_sample;
      if (i == j) {
        if (xs.rows() < 4) continue;
        const std::size_t k = std::min(sample_cap, xs.rows() / 2);
        if (k < 2) continue;
        const auto rows = sample_without_replacement(xs.rows(), 2 * k, draw);
        const std::span<const std::size_t> all(rows);
        x_sample = xs.select_rows(all.first(k));
        y_sample = xs.select_rows(all.subspan(k));
      } else {
        const std::size_t mx = std::min(sample_cap, xs.rows());
        const std::size_t my = std::min(sample_cap, ys.rows());
        if (mx < 2 || my < 2) continue;
        x_sample = xs.select_rows(sample_without_replacement(xs.rows(), mx, draw));
        y_sample = ys.select_rows(sample_without_replacement(ys.rows(), my, draw));
      }

      TestConfig cell_cfg = cfg;
      cell_cfg.seed = derive_seed(cfg.seed, {i, j, kTestStream});
      const TestResult r = permutation_test(x_sample, y_sample, cell_cfg);
      out.mmd[i][j] = out.mmd[j][i] = r.mmd2_observed;
      out.p_values[i][j] = out.p_values[j][i] = r.p_value;
    }
  }
  return out;
}

PowerCurveResult power_curves(const LabeledCorpus& corpus, const std::vector<LabelPair>& pairs,
                              const std::vector<std::size_t>& sample_sizes, std::size_t trials,
                              const TestConfig& cfg, std::size_t rej_cap) {
  if (sample_sizes.empty()) throw ConfigError("power curves need at least one sample size");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  cfg.validate();

  std::vector<std::pair<std::size_t, std::size_t>> pair_index;
  for (const auto& p : pairs) pair_index.emplace_back(corpus.index_of(p.a), corpus.index_of(p.b));

  PowerCurveResult out;
  out.pairs = pairs;
  out.sample_sizes = sample_sizes;
  out.trials = trials;
  out.rej_cap = rej_cap;
  out.config_echo = cfg;
  out.rates.assign(pairs.size(), std::vector<Cell>(sample_sizes.size()));
  out.valid_trials.assign(pairs.size(), std::vector<std::size_t>(sample_sizes.size(), 0));

  const std::size_t workers = cfg.workers.resolve();
  TestConfig trial_cfg = cfg;
  trial_cfg.workers = WorkerCount(1);

  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    const EmbeddingMatrix& xs = corpus[pair_index[pi].first].matrix;
    const EmbeddingMatrix& ys = corpus[pair_index[pi].second].matrix;
    for (std::size_t si = 0; si < sample_sizes.size(); ++si) {
      const std::size_t n = sample_sizes[si];
      const std::size_t nx = std::min({n, xs.rows(), rej_cap});
      const std::size_t ny = std::min({n, ys.rows(), rej_cap});
      if (nx < 2 || ny < 2) continue;

      // Per trial: 1 rejected, 0 not rejected, -1 excluded.
      std::vector<int> outcome(trials, -1);
      parallel_for(trials, workers, [&](std::size_t t, std::size_t) {
        Rng draw(derive_seed(cfg.seed, {pi, n, t, kDrawStream}));
        const EmbeddingMatrix x = xs.select_rows(sample_without_replacement(xs.rows(), nx, draw));
        const EmbeddingMatrix y = ys.select_rows(sample_without_replacement(ys.rows(), ny, draw));
        TestConfig c = trial_cfg;
        c.seed = derive_seed(cfg.seed, {pi, n, t, kTestStream});
        try {
          outcome[t] = permutation_test(x, y, c).reject_null ? 1 : 0;
        } catch (const InsufficientSamplesError&) {
          outcome[t] = -1;
        }
      });

      const auto rejections = static_cast<std::size_t>(std::count(outcome.begin(), outcome.end(), 1));
      const auto valid = static_cast<std::size_t>(std::count_if(outcome.begin(), outcome.end(),
                                                                [](int o) { return o >= 0; }));
      out.valid_trials[pi][si] = valid;
      if (valid > 0) out.rates[pi][si] = static_cast<double>(rejections) / static_cast<double>(valid);
    }
  }
  return out;
}

}  // namespace mmdnov

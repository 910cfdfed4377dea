#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "mmdnov/kernels.hpp"
#include "mmdnov/matrix.hpp"
#include "mmdnov/parallel.hpp"

namespace mmdnov {

/// Permutation-test parameters. Defaults: alpha 0.01 and 1000 permutations
/// (protocol::kArtPermutations is the larger alternative).
struct TestConfig {
  std::size_t permutations = 1000;
  double alpha = 0.01;
  std::uint64_t seed = 0;
  WorkerCount workers{1};
  KernelSpec kernel = KernelSpec::rbf_auto();
  /// Use (k + 1) / (P + 1) instead of k / P. Off by default.
  bool add_one_smoothing = false;

  /// Throws ConfigError for P < 1 or alpha outside (0, 1).
  void validate() const;
};

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
};

struct TestResult {
  double mmd2_observed = 0.0;
  double p_value = 1.0;
  bool reject_null = false;
  /// alpha/2 and 1 - alpha/2 quantiles of the permutation statistics;
  /// absent when no permutation produced a finite statistic.
  std::optional<ConfidenceInterval> ci;
  std::optional<double> sigma_used;
  std::size_t valid_permutations = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  TestConfig config_echo;
};

/// Bandwidth frozen for the whole test: the median heuristic on the
/// original pooled sample (rbf auto), the fixed sigma, or absent (linear).
std::optional<double> resolve_sigma_once(const EmbeddingMatrix& x, const EmbeddingMatrix& y,
                                         const TestConfig& cfg);

/// Permutation test of H0: P = Q with the unbiased MMD^2 statistic.
///
/// All P permutations of the pooled m + n rows are drawn up front from a
/// single generator seeded with cfg.seed; the first m indices of each form
/// the X side. Statistics are evaluated on `cfg.workers` threads from one
/// pooled Gram matrix computed with the frozen bandwidth. The p-value is
/// the fraction of finite permutation statistics >= the observed one (ties
/// count toward the null), and H0 is rejected iff p < alpha. The result is
/// bitwise identical for any worker count.
TestResult permutation_test(const EmbeddingMatrix& x, const EmbeddingMatrix& y, const TestConfig& cfg);

/// Quantile with linear interpolation between order statistics
/// (h = (N - 1) q). `sorted` must be ascending and non-empty.
double interpolated_quantile(std::span<const double> sorted, double q);

}  // namespace mmdnov

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mmdnov/matrix.hpp"

namespace mmdnov {

enum class KernelFamily { kRbf, kLinear };

std::string_view to_string(KernelFamily family) noexcept;

/// Bandwidth chosen per call from the pooled sample (median heuristic).
struct AutoMedian {
  friend bool operator==(AutoMedian, AutoMedian) = default;
};

struct FixedSigma {
  double sigma;
  friend bool operator==(FixedSigma, FixedSigma) = default;
};

using Bandwidth = std::variant<AutoMedian, FixedSigma>;

/// Kernel family plus bandwidth policy. The bandwidth is only used by rbf.
/// Only rbf is characteristic; the linear kernel compares means only.
class KernelSpec {
 public:
  static KernelSpec rbf_auto() { return KernelSpec(KernelFamily::kRbf, AutoMedian{}); }
  /// Throws ConfigError unless sigma is finite and > 0.
  static KernelSpec rbf(double sigma);
  static KernelSpec linear() { return KernelSpec(KernelFamily::kLinear, AutoMedian{}); }

  KernelFamily family() const noexcept { return family_; }
  const Bandwidth& bandwidth() const noexcept { return bandwidth_; }
  bool is_auto() const noexcept { return std::holds_alternative<AutoMedian>(bandwidth_); }

  /// "auto" or the fixed sigma in shortest round-trip form.
  std::string bandwidth_string() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelSpec(KernelFamily family, Bandwidth bandwidth) : family_(family), bandwidth_(bandwidth) {}

  KernelFamily family_;
  Bandwidth bandwidth_;
};

/// Throws ConfigError unless sigma is finite and > 0.
void require_valid_sigma(double sigma);

/// Median of the strictly positive pairwise Euclidean distances over the
/// rows of x stacked on y. Even counts average the two central values.
/// Returns 1.0 when there is no positive distance or the median is not
/// finite.
double median_heuristic_sigma(const EmbeddingMatrix& x, const EmbeddingMatrix& y);

/// Bandwidth in effect for (x, y): override, then fixed sigma, then the
/// median heuristic. Absent for the linear kernel.
std::optional<double> resolve_sigma(const EmbeddingMatrix& x, const EmbeddingMatrix& y,
                                    const KernelSpec& spec,
                                    std::optional<double> sigma_override = std::nullopt);

/// Dense row-major matrix of kernel values.
struct KernelMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
};

struct GramBlocks {
  KernelMatrix kxx;
  KernelMatrix kyy;
  KernelMatrix kxy;
  std::optional<double> sigma_used;
};

/// Kernel evaluations between and within two samples. rbf entries are
/// exp(-gamma * d2) with gamma = 1 / (2 sigma^2) and
/// d2 = max(0, |a|^2 + |b|^2 - 2 <a, b>); diagonals of kxx and kyy are
/// exactly 1. Rows are spread across `workers` threads; the result does
/// not depend on the worker count.
GramBlocks gram_blocks(const EmbeddingMatrix& x, const EmbeddingMatrix& y, const KernelSpec& spec,
                       std::optional<double> sigma_override = std::nullopt,
                       std::size_t workers = 1);

/// Symmetric Gram matrix of one sample. Entry (i, j) is bitwise identical
/// to the one gram_blocks produces for the same pair of rows, so a
/// statistic evaluated on index subsets of this matrix matches the
/// block-wise computation exactly.
KernelMatrix pooled_gram(const EmbeddingMatrix& z, KernelFamily family, std::optional<double> sigma,
                         std::size_t workers = 1);

}  // namespace mmdnov

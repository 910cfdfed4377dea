// Brute-force MMD^2. Shares no code with the Gram-matrix path beyond the
// data types: the bandwidth, the kernel and the sums are all recomputed
// here from first principles.

#include <algorithm>
#include <cmath>
#include <variant>

#include "mmdnov/error.hpp"
#include "mmdnov/mmd.hpp"

namespace mmdnov {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

// Median of the positive entries of the full (m+n) x (m+n) distance matrix,
// both triangles included, by sorting.
double oracle_sigma(const EmbeddingMatrix& x, const EmbeddingMatrix& y) {
  std::vector<std::span<const double>> rows;
  for (std::size_t i = 0; i < x.rows(); ++i) rows.push_back(x.row(i));
  for (std::size_t i = 0; i < y.rows(); ++i) rows.push_back(y.row(i));

  std::vector<double> positive;
  for (const auto& a : rows) {
    for (const auto& b : rows) {
      const double d = std::sqrt(squared_distance(a, b));
      if (d > 0.0) positive.push_back(d);
    }
  }
  if (positive.empty()) return 1.0;
  std::sort(positive.begin(), positive.end());
  const std::size_t c = positive.size();
  const double median = c % 2 == 1 ? positive[c / 2] : (positive[c / 2 - 1] + positive[c / 2]) / 2.0;
  if (median == 0.0 || !std::isfinite(median)) return 1.0;
  return median;
}

}  // namespace

MmdValue mmd2_oracle(const EmbeddingMatrix& x, const EmbeddingMatrix& y, const KernelSpec& spec,
                     std::optional<double> sigma_override) {
  require_same_dim(x, y);
  const std::size_t m = x.rows();
  const std::size_t n = y.rows();
  if (m < 2 || n < 2) throw InsufficientSamplesError(m, n);

  std::optional<double> sigma;
  if (spec.family() == KernelFamily::kRbf) {
    if (sigma_override) {
      require_valid_sigma(*sigma_override);
      sigma = sigma_override;
    } else if (const auto* fixed = std::get_if<FixedSigma>(&spec.bandwidth())) {
      sigma = fixed->sigma;
    } else {
      sigma = oracle_sigma(x, y);
    }
  }

  auto k = [&](std::span<const double> a, std::span<const double> b) {
    if (!sigma) {
      double s = 0.0;
      for (std::size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
      return s;
    }
    return std::exp(-squared_distance(a, b) / (2.0 * *sigma * *sigma));
  };

  double sum_xx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j) sum_xx += k(x.row(i), x.row(j));
    }
  }
  double sum_yy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sum_yy += k(y.row(i), y.row(j));
    }
  }
  double sum_xy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) sum_xy += k(x.row(i), y.row(j));
  }

  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double value = sum_xx / (md * (md - 1)) + sum_yy / (nd * (nd - 1)) - 2.0 * sum_xy / (md * nd);
  if (!std::isfinite(value)) throw NumericalError("MMD^2 is not finite");
  return {value, m, n, sigma};
}

}  // namespace mmdnov

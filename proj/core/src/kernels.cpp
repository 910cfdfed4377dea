#include "mmdnov/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "mmdnov/error.hpp"
#include "mmdnov/parallel.hpp"

namespace mmdnov {
namespace {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double euclidean(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

// All kernel values go through this one evaluator so that block-wise and
// pooled Gram matrices agree bit for bit.
class KernelEvaluator {
 public:
  KernelEvaluator(KernelFamily family, std::optional<double> sigma)
      : family_(family), gamma_(sigma ? 1.0 / (2.0 * *sigma * *sigma) : 0.0) {}

  double operator()(std::span<const double> a, double norm_a, std::span<const double> b,
                    double norm_b) const noexcept {
    const double ab = dot(a, b);
    if (family_ == KernelFamily::kLinear) return ab;
    const double d2 = std::max(0.0, norm_a + norm_b - 2.0 * ab);
    return std::exp(-gamma_ * d2);
  }

  double self(double norm_a) const noexcept {
    return family_ == KernelFamily::kLinear ? norm_a : 1.0;
  }

 private:
  KernelFamily family_;
  double gamma_;
};

std::vector<double> row_norms(const EmbeddingMatrix& m) {
  std::vector<double> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), m.row(i));
  return out;
}

KernelMatrix symmetric_gram(const EmbeddingMatrix& a, const KernelEvaluator& k, std::size_t workers) {
  const std::size_t n = a.rows();
  const auto norms = row_norms(a);
  KernelMatrix g{n, n, std::vector<double>(n * n)};
  parallel_for(n, workers, [&](std::size_t i, std::size_t) {
    g(i, i) = k.self(norms[i]);
    for (std::size_t j = i + 1; j < n; ++j) g(i, j) = k(a.row(i), norms[i], a.row(j), norms[j]);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g(j, i) = g(i, j);
  }
  return g;
}

}  // namespace

std::string_view to_string(KernelFamily family) noexcept {
  return family == KernelFamily::kRbf ? "rbf" : "linear";
}

void require_valid_sigma(double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw ConfigError("rbf bandwidth must be finite and > 0");
  }
}

KernelSpec KernelSpec::rbf(double sigma) {
  require_valid_sigma(sigma);
  return KernelSpec(KernelFamily::kRbf, FixedSigma{sigma});
}

std::string KernelSpec::bandwidth_string() const {
  if (is_auto()) return "auto";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<FixedSigma>(bandwidth_).sigma);
  return std::string(buf, ptr);
}

double median_heuristic_sigma(const EmbeddingMatrix& x, const EmbeddingMatrix& y) {
  require_same_dim(x, y);
  const EmbeddingMatrix z = EmbeddingMatrix::vstack(x, y);
  const std::size_t total = z.rows();

  // The full distance matrix holds every off-diagonal distance twice; a
  // multiset with every element doubled has the same median, so the upper
  // triangle suffices.
  std::vector<double> distances;
  distances.reserve(total * (total - (total > 0)) / 2);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = i + 1; j < total; ++j) {
      const double d = euclidean(z.row(i), z.row(j));
      if (d > 0.0) distances.push_back(d);
    }
  }
  if (distances.empty()) return 1.0;

  const std::size_t mid = distances.size() / 2;
  std::nth_element(distances.begin(), distances.begin() + mid, distances.end());
  double median = distances[mid];
  if (distances.size() % 2 == 0) {
    const double lower = *std::max_element(distances.begin(), distances.begin() + mid);
    median = (lower + median) / 2.0;
  }
  if (median == 0.0 || !std::isfinite(median)) return 1.0;
  return median;
}

std::optional<double> resolve_sigma(const EmbeddingMatrix& x, const EmbeddingMatrix& y,
                                    const KernelSpec& spec, std::optional<double> sigma_override) {
  require_same_dim(x, y);
  if (spec.family() == KernelFamily::kLinear) return std::nullopt;
  if (sigma_override) {
    require_valid_sigma(*sigma_override);
    return sigma_override;
  }
  if (const auto* fixed = std::get_if<FixedSigma>(&spec.bandwidth())) return fixed->sigma;
  return median_heuristic_sigma(x, y);
}

GramBlocks gram_blocks(const EmbeddingMatrix& x, const EmbeddingMatrix& y, const KernelSpec& spec,
                       std::optional<double> sigma_override, std::size_t workers) {
  GramBlocks out;
  out.sigma_used = resolve_sigma(x, y, spec, sigma_override);
  const KernelEvaluator k(spec.family(), out.sigma_used);

  out.kxx = symmetric_gram(x, k, workers);
  out.kyy = symmetric_gram(y, k, workers);

  const auto nx = row_norms(x);
  const auto ny = row_norms(y);
  out.kxy = KernelMatrix{x.rows(), y.rows(), std::vector<double>(x.rows() * y.rows())};
  parallel_for(x.rows(), workers, [&](std::size_t i, std::size_t) {
    for (std::size_t j = 0; j < y.rows(); ++j) out.kxy(i, j) = k(x.row(i), nx[i], y.row(j), ny[j]);
  });
  return out;
}

KernelMatrix pooled_gram(const EmbeddingMatrix& z, KernelFamily family, std::optional<double> sigma,
                         std::size_t workers) {
  if (family == KernelFamily::kRbf) {
    if (!sigma) throw ConfigError("rbf Gram matrix needs a bandwidth");
    require_valid_sigma(*sigma);
  }
  return symmetric_gram(z, KernelEvaluator(family, sigma), workers);
}

}  // namespace mmdnov

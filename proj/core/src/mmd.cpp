#include "mmdnov/mmd.hpp"

#include <cmath>

#include "mmdnov/error.hpp"
#include "statistic.hpp"

namespace mmdnov {

MmdValue mmd2_unbiased(const EmbeddingMatrix& x, const EmbeddingMatrix& y, const KernelSpec& spec,
                       std::optional<double> sigma_override) {
  require_same_dim(x, y);
  if (x.rows() < 2 || y.rows() < 2) throw InsufficientSamplesError(x.rows(), y.rows());

  const GramBlocks g = gram_blocks(x, y, spec, sigma_override);
  detail::StatisticScratch scratch;
  const double value = detail::unbiased_statistic(
      x.rows(), y.rows(), [&](std::size_t i, std::size_t j) { return g.kxx(i, j); },
      [&](std::size_t i, std::size_t j) { return g.kyy(i, j); },
      [&](std::size_t i, std::size_t j) { return g.kxy(i, j); }, scratch);
  if (!std::isfinite(value)) throw NumericalError("MMD^2 is not finite");
  return {value, x.rows(), y.rows(), g.sigma_used};
}

}  // namespace mmdnov

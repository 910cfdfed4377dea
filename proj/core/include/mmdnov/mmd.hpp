#pragma once

#include <cstddef>
#include <optional>

#include "mmdnov/kernels.hpp"
#include "mmdnov/matrix.hpp"

namespace mmdnov {

/// Unbiased squared MMD between two samples. The value is signed: under
/// the null hypothesis it fluctuates around zero and is never clamped.
struct MmdValue {
  double value = 0.0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::optional<double> sigma_used;
};

/// U-statistic
///   sum_{i!=j} k(x_i,x_j) / (m(m-1)) + sum_{i!=j} k(y_i,y_j) / (n(n-1))
///   - 2 sum_{i,j} k(x_i,y_j) / (mn)
/// with pairwise summation over Gram rows. Requires m, n >= 2
/// (InsufficientSamplesError) and matching dims (ShapeError).
/// `sigma_override` supersedes the spec's bandwidth policy for rbf.
MmdValue mmd2_unbiased(const EmbeddingMatrix& x, const EmbeddingMatrix& y, const KernelSpec& spec,
                       std::optional<double> sigma_override = std::nullopt);

/// Reference implementation for equivalence testing: explicit nested loops,
/// pointwise kernel evaluation from coordinate differences, its own median
/// over the full distance matrix, and left-to-right summation. Same
/// contract as mmd2_unbiased; meant for small inputs.
MmdValue mmd2_oracle(const EmbeddingMatrix& x, const EmbeddingMatrix& y, const KernelSpec& spec,
                     std::optional<double> sigma_override = std::nullopt);

}  // namespace mmdnov

#pragma once

#include <cstddef>
#include <span>

namespace mmdnov {

/// Pairwise (cascade) summation: recursive halving down to blocks of 8 that
/// are summed left to right. Error grows as O(log n) rather than O(n), and
/// the order of additions depends only on the length.
inline double pairwise_sum(std::span<const double> v) noexcept {
  constexpr std::size_t kBlock = 8;
  if (v.size() <= kBlock) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace mmdnov

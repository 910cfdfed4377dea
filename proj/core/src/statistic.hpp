#pragma once

#include <cstddef>
#include <vector>

#include "mmdnov/summation.hpp"

namespace mmdnov::detail {

/// Reusable buffers for unbiased_statistic; one per thread.
struct StatisticScratch {
  std::vector<double> row;
  std::vector<double> row_sums;
  std::vector<std::size_t> split;
};

/// Three-term unbiased MMD^2 from kernel accessors. kxx(i, j) for
/// i, j < m; kyy(i, j) for i, j < n; kxy(i, j) for i < m, j < n. Each row is
/// reduced with pairwise summation, then the row sums are reduced the same
/// way, so the addition order depends only on (m, n).
template <typename Kxx, typename Kyy, typename Kxy>
double unbiased_statistic(std::size_t m, std::size_t n, Kxx&& kxx, Kyy&& kyy, Kxy&& kxy,
                          StatisticScratch& scratch) {
  auto& row = scratch.row;
  auto& sums = scratch.row_sums;

  auto within = [&](std::size_t size, auto&& k) {
    sums.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      row.clear();
      for (std::size_t j = 0; j < size; ++j) {
        if (j != i) row.push_back(k(i, j));
      }
      sums[i] = pairwise_sum(row);
    }
    const double s = pairwise_sum(sums);
    return s / (static_cast<double>(size) * static_cast<double>(size - 1));
  };

  const double term_x = within(m, kxx);
  const double term_y = within(n, kyy);

  sums.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j) row.push_back(kxy(i, j));
    sums[i] = pairwise_sum(row);
  }
  const double term_xy = pairwise_sum(sums) / (static_cast<double>(m) * static_cast<double>(n));

  return term_x + term_y - 2.0 * term_xy;
}

}  // namespace mmdnov::detail

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mmdnov/error.hpp"
#include "mmdnov/kernels.hpp"
#include "test_support.hpp"

namespace mmdnov {
namespace {

using testutil::column;

// Cholesky of a + shift * I; false if a pivot is not positive.
bool cholesky_succeeds(const KernelMatrix& a, double shift) {
  const std::size_t n = a.rows;
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j) + shift;
    for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (!(d > 0.0)) return false;
    l[j * n + j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / l[j * n + j];
    }
  }
  return true;
}

TEST(MedianHeuristic, HandEnumeratedOneDimensional) {
  // Pooled {0, 1, 3}: distances 1, 3, 2, each twice -> median 2.
  EXPECT_DOUBLE_EQ(median_heuristic_sigma(column({0, 1}), column({3})), 2.0);
}

TEST(MedianHeuristic, EvenCountAveragesCentralValues) {
  // Pooled {0, 1, 3, 7}: distances 1, 3, 7, 2, 6, 4 -> sorted 1 2 3 4 6 7 -> 3.5.
  EXPECT_DOUBLE_EQ(median_heuristic_sigma(column({0, 1}), column({3, 7})), 3.5);
}

TEST(MedianHeuristic, ZeroDistancesAreIgnored) {
  // Pooled {0, 0, 0, 2}: positive distances are three 2s.
  EXPECT_DOUBLE_EQ(median_heuristic_sigma(column({0, 0}), column({0, 2})), 2.0);
}

TEST(MedianHeuristic, FallsBackToOne) {
  EXPECT_EQ(median_heuristic_sigma(column({5, 5}), column({5})), 1.0);
  EXPECT_EQ(median_heuristic_sigma(column({5}), EmbeddingMatrix(0, 1, {})), 1.0);
  EXPECT_THROW(median_heuristic_sigma(column({1}), EmbeddingMatrix(1, 2, {1, 2})), ShapeError);
}

TEST(KernelSpec, ValidatesSigma) {
  EXPECT_THROW(KernelSpec::rbf(0.0), ConfigError);
  EXPECT_THROW(KernelSpec::rbf(-1.0), ConfigError);
  EXPECT_THROW(KernelSpec::rbf(std::nan("")), ConfigError);
  EXPECT_EQ(KernelSpec::rbf(0.7).bandwidth_string(), "0.7");
  EXPECT_EQ(KernelSpec::rbf_auto().bandwidth_string(), "auto");
}

TEST(GramBlocks, PointValues) {
  const auto g = gram_blocks(column({0}), column({2}), KernelSpec::rbf(1.0));
  EXPECT_EQ(g.kxx(0, 0), 1.0);
  EXPECT_NEAR(g.kxy(0, 0), 0.1353352832366127, 1e-15);  // exp(-2)
  ASSERT_TRUE(g.sigma_used);
  EXPECT_EQ(*g.sigma_used, 1.0);

  const auto lin = gram_blocks(EmbeddingMatrix(1, 2, {1, 2}), EmbeddingMatrix(1, 2, {3, 4}), KernelSpec::linear());
  EXPECT_EQ(lin.kxy(0, 0), 11.0);
  EXPECT_FALSE(lin.sigma_used);
}

TEST(GramBlocks, SigmaResolutionOrder) {
  const auto x = column({0, 1});
  const auto y = column({3});
  EXPECT_EQ(*gram_blocks(x, y, KernelSpec::rbf_auto()).sigma_used, 2.0);
  EXPECT_EQ(*gram_blocks(x, y, KernelSpec::rbf(0.5)).sigma_used, 0.5);
  EXPECT_EQ(*gram_blocks(x, y, KernelSpec::rbf(0.5), 3.0).sigma_used, 3.0);
  EXPECT_THROW(gram_blocks(x, y, KernelSpec::rbf_auto(), -1.0), ConfigError);
  EXPECT_THROW(gram_blocks(x, EmbeddingMatrix(1, 2, {0, 0}), KernelSpec::linear()), ShapeError);
}

TEST(GramBlocks, RbfStructure) {
  std::mt19937_64 gen(17);
  for (int rep = 0; rep < 20; ++rep) {
    const auto x = testutil::random_matrix(gen, 12, 5);
    const auto y = testutil::random_matrix(gen, 9, 5, 2.0);
    const auto g = gram_blocks(x, y, KernelSpec::rbf_auto());
    for (std::size_t i = 0; i < 12; ++i) {
      EXPECT_EQ(g.kxx(i, i), 1.0);
      for (std::size_t j = 0; j < 12; ++j) {
        EXPECT_NEAR(g.kxx(i, j), g.kxx(j, i), 1e-12);
        EXPECT_GT(g.kxx(i, j), 0.0);
        EXPECT_LE(g.kxx(i, j), 1.0);
      }
    }
    for (double v : g.kxy.values) {
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(GramBlocks, RbfGramIsPositiveSemidefinite) {
  std::mt19937_64 gen(23);
  for (std::size_t m : {3u, 8u, 15u, 25u}) {
    const auto x = testutil::random_matrix(gen, m, 3);
    const auto g = gram_blocks(x, x, KernelSpec::rbf_auto());
    EXPECT_TRUE(cholesky_succeeds(g.kxx, 1e-8 * static_cast<double>(m))) << "m=" << m;
  }
}

TEST(GramBlocks, CommonScalingLeavesRbfEntriesInvariant) {
  std::mt19937_64 gen(31);
  for (double c : {2.0, 0.5, 3.7, 1e-3}) {
    const auto x = testutil::random_matrix(gen, 10, 4);
    const auto y = testutil::random_matrix(gen, 7, 4, 1.0, 0.5);
    std::vector<double> xs(x.values().begin(), x.values().end());
    std::vector<double> ys(y.values().begin(), y.values().end());
    for (auto& v : xs) v *= c;
    for (auto& v : ys) v *= c;
    const EmbeddingMatrix xc(10, 4, xs), yc(7, 4, ys);

    const double s = median_heuristic_sigma(x, y);
    const double sc = median_heuristic_sigma(xc, yc);
    EXPECT_NEAR(sc / s, c, 1e-12 * c);

    const auto g = gram_blocks(x, y, KernelSpec::rbf_auto());
    const auto gc = gram_blocks(xc, yc, KernelSpec::rbf_auto());
    double worst = 0.0;
    for (std::size_t k = 0; k < g.kxy.values.size(); ++k) {
      worst = std::max(worst, std::abs(g.kxy.values[k] - gc.kxy.values[k]));
    }
    for (std::size_t k = 0; k < g.kxx.values.size(); ++k) {
      worst = std::max(worst, std::abs(g.kxx.values[k] - gc.kxx.values[k]));
    }
    EXPECT_LE(worst, 1e-12) << "c=" << c;
  }
}

TEST(GramBlocks, PureAndIndependentOfWorkers) {
  std::mt19937_64 gen(37);
  const auto x = testutil::random_matrix(gen, 40, 6);
  const auto y = testutil::random_matrix(gen, 33, 6);
  const auto a = gram_blocks(x, y, KernelSpec::rbf_auto(), std::nullopt, 1);
  const auto b = gram_blocks(x, y, KernelSpec::rbf_auto(), std::nullopt, 4);
  EXPECT_EQ(a.kxx.values, b.kxx.values);
  EXPECT_EQ(a.kyy.values, b.kyy.values);
  EXPECT_EQ(a.kxy.values, b.kxy.values);
}

TEST(PooledGram, MatchesBlocksBitwise) {
  std::mt19937_64 gen(41);
  const auto x = testutil::random_matrix(gen, 6, 3);
  const auto y = testutil::random_matrix(gen, 5, 3);
  for (const auto& spec : {KernelSpec::rbf(1.3), KernelSpec::linear()}) {
    const auto blocks = gram_blocks(x, y, spec);
    const auto pooled = pooled_gram(EmbeddingMatrix::vstack(x, y), spec.family(), blocks.sigma_used, 3);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(pooled(i, j), blocks.kxx(i, j));
      for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(pooled(i, 6 + j), blocks.kxy(i, j));
    }
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(pooled(6 + i, 6 + j), blocks.kyy(i, j));
    }
  }
  EXPECT_THROW(pooled_gram(x, KernelFamily::kRbf, std::nullopt), ConfigError);
}

}  // namespace
}  // namespace mmdnov

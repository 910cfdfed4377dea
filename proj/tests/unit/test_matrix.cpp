#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "mmdnov/error.hpp"
#include "mmdnov/matrix.hpp"

namespace mmdnov {
namespace {

TEST(EmbeddingMatrix, EnforcesInvariants) {
  EXPECT_THROW(EmbeddingMatrix(2, 0, {}), ShapeError);
  EXPECT_THROW(EmbeddingMatrix(2, 2, {1, 2, 3}), ShapeError);
  try {
    EmbeddingMatrix(2, 2, {1, 2, std::numeric_limits<double>::infinity(), 4});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.col(), 0u);
  }
  EXPECT_NO_THROW(EmbeddingMatrix(0, 3, {}));
}

TEST(EmbeddingMatrix, RowsSelectAndStack) {
  const EmbeddingMatrix a(3, 2, {1, 2, 3, 4, 5, 6});
  const std::vector<std::size_t> idx = {2, 0};
  EXPECT_EQ(a.select_rows(idx), EmbeddingMatrix(2, 2, {5, 6, 1, 2}));
  EXPECT_EQ(EmbeddingMatrix::vstack(a, EmbeddingMatrix(1, 2, {7, 8})).rows(), 4u);
  EXPECT_THROW(EmbeddingMatrix::vstack(a, EmbeddingMatrix(1, 3, {7, 8, 9})), ShapeError);
  const std::vector<std::size_t> bad = {3};
  EXPECT_THROW(a.select_rows(bad), ShapeError);
}

TEST(LabeledCorpus, UniqueNonEmptyLabelsSharedDim) {
  LabeledCorpus c;
  c.add("a", EmbeddingMatrix(1, 2, {0, 0}));
  EXPECT_THROW(c.add("", EmbeddingMatrix(1, 2, {0, 0})), ConfigError);
  EXPECT_THROW(c.add("a", EmbeddingMatrix(1, 2, {0, 0})), ConfigError);
  EXPECT_THROW(c.add("b", EmbeddingMatrix(1, 3, {0, 0, 0})), ShapeError);
  c.add("b", EmbeddingMatrix(2, 2, {0, 0, 1, 1}));
  EXPECT_EQ(c.index_of("b"), 1u);
  EXPECT_THROW(c.index_of("z"), ConfigError);
}

}  // namespace
}  // namespace mmdnov

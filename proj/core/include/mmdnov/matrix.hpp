#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mmdnov {

/// Dense row-major n x d table of finite doubles. One row per embedded item.
///
/// Construction validates the invariants: dim >= 1, values.size() == n * dim,
/// and every value finite. An empty matrix (n == 0) is valid.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t n_items, std::size_t dim, std::vector<double> values);

  /// Zero-filled matrix; used by builders that fill rows in place.
  static EmbeddingMatrix zeros(std::size_t n_items, std::size_t dim);

  std::size_t rows() const noexcept { return n_items_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return n_items_ == 0; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<double> row(std::size_t i) { return {values_.data() + i * dim_, dim_}; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * dim_ + j]; }

  std::span<const double> values() const noexcept { return values_; }

  /// New matrix holding the given rows, in the given order.
  EmbeddingMatrix select_rows(std::span<const std::size_t> indices) const;

  /// Rows of `top` followed by rows of `bottom`; dims must match.
  static EmbeddingMatrix vstack(const EmbeddingMatrix& top, const EmbeddingMatrix& bottom);

  friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;

 private:
  std::size_t n_items_ = 0;
  std::size_t dim_ = 1;
  std::vector<double> values_;
};

/// Throws ShapeError when the two matrices have different dims.
void require_same_dim(const EmbeddingMatrix& x, const EmbeddingMatrix& y);

/// Ordered set of labeled matrices sharing one dim. Labels are unique and
/// non-empty; `add` enforces both invariants.
class LabeledCorpus {
 public:
  struct Entry {
    std::string label;
    EmbeddingMatrix matrix;
  };

  void add(std::string label, EmbeddingMatrix matrix);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }

  /// Index of `label`; throws ConfigError when absent.
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const;

  std::vector<std::string> labels() const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace mmdnov

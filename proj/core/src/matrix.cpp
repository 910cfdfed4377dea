#include "mmdnov/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "mmdnov/error.hpp"

namespace mmdnov {

EmbeddingMatrix::EmbeddingMatrix(std::size_t n_items, std::size_t dim, std::vector<double> values)
    : n_items_(n_items), dim_(dim), values_(std::move(values)) {
  if (dim_ == 0) throw ShapeError("embedding dim must be >= 1");
  if (values_.size() != n_items_ * dim_) {
    throw ShapeError("value count " + std::to_string(values_.size()) + " != " +
                     std::to_string(n_items_) + " x " + std::to_string(dim_));
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw ValidationError("non-finite value", k / dim_, k % dim_);
    }
  }
}

EmbeddingMatrix EmbeddingMatrix::zeros(std::size_t n_items, std::size_t dim) {
  return EmbeddingMatrix(n_items, dim, std::vector<double>(n_items * dim, 0.0));
}

EmbeddingMatrix EmbeddingMatrix::select_rows(std::span<const std::size_t> indices) const {
  std::vector<double> out;
  out.reserve(indices.size() * dim_);
  for (std::size_t idx : indices) {
    if (idx >= n_items_) throw ShapeError("row index " + std::to_string(idx) + " out of range");
    auto r = row(idx);
    out.insert(out.end(), r.begin(), r.end());
  }
  EmbeddingMatrix m;
  m.n_items_ = indices.size();
  m.dim_ = dim_;
  m.values_ = std::move(out);
  return m;
}

EmbeddingMatrix EmbeddingMatrix::vstack(const EmbeddingMatrix& top, const EmbeddingMatrix& bottom) {
  require_same_dim(top, bottom);
  EmbeddingMatrix m;
  m.n_items_ = top.n_items_ + bottom.n_items_;
  m.dim_ = top.dim_;
  m.values_.reserve(top.values_.size() + bottom.values_.size());
  m.values_.insert(m.values_.end(), top.values_.begin(), top.values_.end());
  m.values_.insert(m.values_.end(), bottom.values_.begin(), bottom.values_.end());
  return m;
}

void require_same_dim(const EmbeddingMatrix& x, const EmbeddingMatrix& y) {
  if (x.dim() != y.dim()) {
    throw ShapeError("dim mismatch: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
  }
}

void LabeledCorpus::add(std::string label, EmbeddingMatrix matrix) {
  if (label.empty()) throw ConfigError("corpus label must be non-empty");
  if (contains(label)) throw ConfigError("duplicate corpus label '" + label + "'");
  if (!entries_.empty() && entries_.front().matrix.dim() != matrix.dim()) {
    throw ShapeError("label '" + label + "' has dim " + std::to_string(matrix.dim()) +
                     ", corpus dim is " + std::to_string(entries_.front().matrix.dim()));
  }
  entries_.push_back({std::move(label), std::move(matrix)});
}

std::size_t LabeledCorpus::index_of(const std::string& label) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return e.label == label; });
  if (it == entries_.end()) throw ConfigError("unknown label '" + label + "'");
  return static_cast<std::size_t>(it - entries_.begin());
}

bool LabeledCorpus::contains(const std::string& label) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.label == label; });
}

std::vector<std::string> LabeledCorpus::labels() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.label);
  return out;
}

}  // namespace mmdnov

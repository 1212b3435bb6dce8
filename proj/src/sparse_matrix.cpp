#include "bbs/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace bbs {

namespace {

bool col_major_less(const Triplet& a, const Triplet& b) {
  return a.col != b.col ? a.col < b.col : a.row < b.row;
}

}  // namespace

SparseIntMatrix::SparseIntMatrix(std::uint64_t dim, std::vector<Triplet> entries) : dim_(dim) {
  for (const Triplet& t : entries) {
    if (t.row >= dim || t.col >= dim) throw std::out_of_range("triplet outside matrix");
  }
  std::sort(entries.begin(), entries.end(), col_major_less);
  entries_.reserve(entries.size());
  for (const Triplet& t : entries) {
    if (!entries_.empty() && entries_.back().row == t.row && entries_.back().col == t.col) {
      entries_.back().value += t.value;
    } else {
      entries_.push_back(t);
    }
  }
  std::erase_if(entries_, [](const Triplet& t) { return t.value == 0; });
}

SparseIntMatrix SparseIntMatrix::identity(std::uint64_t dim, std::int64_t value) {
  std::vector<Triplet> e;
  e.reserve(dim);
  for (std::uint64_t i = 0; i < dim; ++i) e.push_back({i, i, value});
  return SparseIntMatrix(dim, std::move(e));
}

std::int64_t SparseIntMatrix::at(std::uint64_t row, std::uint64_t col) const {
  const Triplet key{row, col, 0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, col_major_less);
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return 0;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  std::vector<Triplet> e;
  e.reserve(entries_.size());
  for (const Triplet& t : entries_) e.push_back({t.col, t.row, t.value});
  return SparseIntMatrix(dim_, std::move(e));
}

SparseIntMatrix SparseIntMatrix::relabel(std::span<const std::uint64_t> perm) const {
  if (perm.size() != dim_) throw std::invalid_argument("relabelling has the wrong length");
  std::vector<Triplet> e;
  e.reserve(entries_.size());
  for (const Triplet& t : entries_) e.push_back({perm[t.row], perm[t.col], t.value});
  return SparseIntMatrix(dim_, std::move(e));
}

std::vector<std::int64_t> SparseIntMatrix::row_sums() const {
  std::vector<std::int64_t> s(dim_, 0);
  for (const Triplet& t : entries_) s[t.row] += t.value;
  return s;
}

std::vector<std::int64_t> SparseIntMatrix::col_sums() const {
  std::vector<std::int64_t> s(dim_, 0);
  for (const Triplet& t : entries_) s[t.col] += t.value;
  return s;
}

std::vector<std::int64_t> SparseIntMatrix::diagonal() const {
  std::vector<std::int64_t> d(dim_, 0);
  for (const Triplet& t : entries_) {
    if (t.row == t.col) d[t.row] = t.value;
  }
  return d;
}

bool SparseIntMatrix::is_symmetric() const { return *this == transpose(); }

SparseIntMatrix operator+(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in sum");
  std::vector<Triplet> e(a.entries().begin(), a.entries().end());
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return SparseIntMatrix(a.dim(), std::move(e));
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in product");
  // Bucket a by column so that (a b)[r, c] = sum_j a[r, j] b[j, c].
  std::unordered_map<std::uint64_t, std::vector<const Triplet*>> a_by_col;
  for (const Triplet& t : a.entries()) a_by_col[t.col].push_back(&t);
  std::vector<Triplet> e;
  for (const Triplet& tb : b.entries()) {
    auto it = a_by_col.find(tb.row);
    if (it == a_by_col.end()) continue;
    for (const Triplet* ta : it->second) e.push_back({ta->row, tb.col, ta->value * tb.value});
  }
  return SparseIntMatrix(a.dim(), std::move(e));
}

}  // namespace bbs

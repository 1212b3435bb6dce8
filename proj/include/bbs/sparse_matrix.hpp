#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bbs {

struct Triplet {
  std::uint64_t row;
  std::uint64_t col;
  std::int64_t value;

  bool operator==(const Triplet&) const = default;
};

// Square integer matrix in triplet form. Entries are kept sorted by
// (col, row), duplicates merged and explicit zeros dropped, so two equal
// matrices always have identical entry lists.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::uint64_t dim, std::vector<Triplet> entries);

  static SparseIntMatrix identity(std::uint64_t dim, std::int64_t value = 1);

  std::uint64_t dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  std::span<const Triplet> entries() const { return entries_; }

  std::int64_t at(std::uint64_t row, std::uint64_t col) const;

  SparseIntMatrix transpose() const;
  // M'[perm[r], perm[c]] = M[r, c].
  SparseIntMatrix relabel(std::span<const std::uint64_t> perm) const;

  std::vector<std::int64_t> row_sums() const;
  std::vector<std::int64_t> col_sums() const;
  std::vector<std::int64_t> diagonal() const;
  bool is_symmetric() const;

  // y = M x, accumulating in the caller's integer type.
  template <typename T>
  void multiply(std::span<const T> x, std::span<T> y) const {
    for (auto& v : y) v = T(0);
    for (const Triplet& t : entries_) y[t.row] += T(t.value) * x[t.col];
  }

  bool operator==(const SparseIntMatrix&) const = default;

 private:
  std::uint64_t dim_ = 0;
  std::vector<Triplet> entries_;
};

SparseIntMatrix operator+(const SparseIntMatrix& a, const SparseIntMatrix& b);
SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b);

}  // namespace bbs

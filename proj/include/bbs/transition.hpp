#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bbs/eigensolver.hpp"
#include "bbs/level_matrix.hpp"
#include "bbs/sparse_matrix.hpp"
#include "bbs/system.hpp"

namespace bbs {

// M = S / scale with S = sum_i (a_i + a_i^T) an exact symmetric integer matrix.
class TransitionMatrix {
 public:
  // Throws std::invalid_argument unless S is symmetric with non-negative entries.
  TransitionMatrix(System system, unsigned level, std::int64_t scale, SparseIntMatrix s);

  const System& system() const { return system_; }
  unsigned level() const { return level_; }
  std::int64_t scale() const { return scale_; }
  std::uint64_t dim() const { return s_.dim(); }
  const SparseIntMatrix& integer_part() const { return s_; }

  double at(std::uint64_t row, std::uint64_t col) const {
    return static_cast<double>(s_.at(row, col)) / static_cast<double>(scale_);
  }

  DenseSymmetricMatrix dense_integer_part() const;

 private:
  System system_;
  unsigned level_;
  std::int64_t scale_;
  SparseIntMatrix s_;
};

TransitionMatrix transition_from_levels(std::span<const LevelMatrix> matrices);
TransitionMatrix build_transition(const System& system, unsigned n);

// Exact integer check that every row and column of S sums to scale.
bool check_double_stochastic(const TransitionMatrix& t);

// trace(S^m) for m = 0..mmax, exact. Throws std::overflow_error if a value
// leaves the 64-bit range.
std::vector<std::int64_t> trace_moments(const TransitionMatrix& t, unsigned mmax);

}  // namespace bbs

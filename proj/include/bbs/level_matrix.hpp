#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bbs/automaton.hpp"
#include "bbs/errors.hpp"
#include "bbs/sparse_matrix.hpp"
#include "bbs/system.hpp"

namespace bbs {

// Levels above this are refused by the sparse builders (2^26 columns per
// state matrix is already ~0.5 GiB per state).
inline constexpr unsigned kMaxSparseLevel = 26;

// 0/1 matrix of one state's action on the 2^n words of length n. Columns are
// inputs and rows are outputs, so every column holds exactly one 1, at row
// image()[col].
class LevelMatrix {
 public:
  LevelMatrix(System system, StateId state, unsigned level, std::vector<std::uint64_t> image);

  const System& system() const { return system_; }
  StateId state() const { return state_; }
  unsigned level() const { return level_; }
  std::uint64_t dim() const { return std::uint64_t{1} << level_; }

  std::uint64_t row_of(std::uint64_t col) const { return image_[col]; }
  std::span<const std::uint64_t> image() const { return image_; }
  int at(std::uint64_t row, std::uint64_t col) const { return image_[col] == row ? 1 : 0; }

  SparseIntMatrix to_sparse() const;

  bool operator==(const LevelMatrix&) const = default;

 private:
  System system_;
  StateId state_;
  unsigned level_;
  std::vector<std::uint64_t> image_;
};

// Enumerates act(q_i, .) over all 2^n inputs.
LevelMatrix build_direct(const MealyAutomaton& automaton, StateId state, unsigned n);

// Block recursion for the capacity-k carrier:
//   a_0 -> [[a_0, a_1], [0, 0]]
//   a_i -> [[0, a_{i+1}], [a_{i-1}, 0]]   for 1 <= i <= k-1
//   a_k -> [[0, 0], [a_{k-1}, a_k]]
// starting from a_i^(0) = [1].
std::vector<LevelMatrix> build_recursive(unsigned k, unsigned n);

// a_0 -> [[0, a_1], [a_0, 0]],  a_1 -> [[a_0, 0], [0, a_1]].
std::array<LevelMatrix, 2> build_lamplighter_recursive(unsigned n);

// All state matrices of a system at level n, via the block recursions.
std::vector<LevelMatrix> build_level(const System& system, unsigned n);

// Closed-form entry of a_eps^(n) for BBS translation (k = 1) or the
// lamplighter, as a product of parities of row/column binary digits.
int entry_formula(SystemKind kind, unsigned eps, std::uint64_t row, std::uint64_t col,
                  unsigned n);

SparseIntMatrix transpose(const LevelMatrix& m);

}  // namespace bbs

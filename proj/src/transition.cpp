#include "bbs/transition.hpp"

#include <limits>
#include <stdexcept>

namespace bbs {

TransitionMatrix::TransitionMatrix(System system, unsigned level, std::int64_t scale,
                                   SparseIntMatrix s)
    : system_(system), level_(level), scale_(scale), s_(std::move(s)) {
  if (scale_ <= 0) throw std::invalid_argument("transition scale must be positive");
  for (const Triplet& t : s_.entries()) {
    if (t.value < 0) throw std::invalid_argument("transition entries must be non-negative");
  }
  if (!s_.is_symmetric()) throw std::invalid_argument("transition operator must be symmetric");
}

DenseSymmetricMatrix TransitionMatrix::dense_integer_part() const {
  DenseSymmetricMatrix d(static_cast<std::size_t>(s_.dim()));
  for (const Triplet& t : s_.entries()) d(t.row, t.col) = static_cast<double>(t.value);
  return d;
}

TransitionMatrix transition_from_levels(std::span<const LevelMatrix> matrices) {
  if (matrices.empty()) throw std::invalid_argument("no level matrices given");
  const System system = matrices.front().system();
  const unsigned level = matrices.front().level();
  std::vector<Triplet> e;
  e.reserve(2 * matrices.size() * matrices.front().dim());
  for (const LevelMatrix& m : matrices) {
    if (m.level() != level || !(m.system() == system)) {
      throw std::invalid_argument("level matrices disagree on system or level");
    }
    for (std::uint64_t c = 0; c < m.dim(); ++c) {
      e.push_back({m.row_of(c), c, 1});
      e.push_back({c, m.row_of(c), 1});
    }
  }
  const auto scale = 2 * static_cast<std::int64_t>(matrices.size());
  return TransitionMatrix(system, level, scale,
                          SparseIntMatrix(std::uint64_t{1} << level, std::move(e)));
}

TransitionMatrix build_transition(const System& system, unsigned n) {
  const auto levels = build_level(system, n);
  return transition_from_levels(levels);
}

bool check_double_stochastic(const TransitionMatrix& t) {
  const auto& s = t.integer_part();
  for (std::int64_t v : s.row_sums()) {
    if (v != t.scale()) return false;
  }
  for (std::int64_t v : s.col_sums()) {
    if (v != t.scale()) return false;
  }
  return true;
}

std::vector<std::int64_t> trace_moments(const TransitionMatrix& t, unsigned mmax) {
  const auto& s = t.integer_part();
  const std::size_t n = static_cast<std::size_t>(s.dim());
  const unsigned half = (mmax + 1) / 2;
  std::vector<__int128> acc(mmax + 1, 0);
  std::vector<std::vector<__int128>> powers(half + 1, std::vector<__int128>(n, 0));

  for (std::size_t i = 0; i < n; ++i) {
    std::fill(powers[0].begin(), powers[0].end(), 0);
    powers[0][i] = 1;
    for (unsigned j = 1; j <= half; ++j) {
      s.multiply<__int128>(powers[j - 1], powers[j]);
    }
    // trace(S^m) = sum_i <S^a e_i, S^b e_i> with a + b = m.
    for (unsigned m = 0; m <= mmax; ++m) {
      const unsigned a = m / 2;
      const unsigned b = m - a;
      __int128 dot = 0;
      for (std::size_t r = 0; r < n; ++r) dot += powers[a][r] * powers[b][r];
      acc[m] += dot;
    }
  }
  std::vector<std::int64_t> out(mmax + 1);
  for (unsigned m = 0; m <= mmax; ++m) {
    if (acc[m] > std::numeric_limits<std::int64_t>::max()) {
      throw std::overflow_error("trace moment exceeds 64 bits");
    }
    out[m] = static_cast<std::int64_t>(acc[m]);
  }
  return out;
}

}  // namespace bbs

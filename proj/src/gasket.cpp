#include "bbs/gasket.hpp"

#include <stdexcept>

#include "bbs/level_matrix.hpp"
#include "bbs/transition.hpp"

namespace bbs {

Bits gasket_row(unsigned n) {
  if (n == 0) throw std::invalid_argument("gasket rows start at n = 1");
  Bits row{1};
  for (unsigned r = 2; r <= n; ++r) {
    Bits next(r, 1);
    for (unsigned m = 1; m + 1 < r; ++m) next[m] = row[m - 1] ^ row[m];
    row = std::move(next);
  }
  return row;
}

Bits gasket_row_lucas(unsigned n) {
  if (n == 0) throw std::invalid_argument("gasket rows start at n = 1");
  Bits row(n);
  const std::uint64_t top = n - 1;
  for (std::uint64_t m = 0; m < n; ++m) row[m] = (m & top) == m ? 1 : 0;
  return row;
}

Bits t_operator(unsigned alpha, const Bits& s) {
  Bits out(s);
  out.reserve(2 * s.size());
  for (std::uint8_t b : s) out.push_back(alpha ? static_cast<std::uint8_t>(b ^ 1u) : b);
  return out;
}

Bits nu(unsigned n) {
  if (n < 2) throw std::invalid_argument("nu is defined for n >= 2");
  const Bits g = gasket_row(n);
  Bits s{0};
  for (unsigned j = n - 1; j >= 1; --j) s = t_operator(g[j - 1], s);
  return s;
}

Bits nu_closed(unsigned n) {
  if (n < 2) throw std::invalid_argument("nu is defined for n >= 2");
  const Bits g = gasket_row(n);
  const unsigned digits = n - 1;
  Bits s(std::uint64_t{1} << digits);
  for (std::uint64_t k = 0; k < s.size(); ++k) {
    unsigned acc = 0;
    for (unsigned j = 1; j <= digits; ++j) acc ^= ((k >> (digits - j)) & 1u) & g[j - 1];
    s[k] = static_cast<std::uint8_t>(acc);
  }
  return s;
}

bool is_permutation(const std::vector<std::uint64_t>& image) {
  std::vector<bool> hit(image.size(), false);
  for (std::uint64_t v : image) {
    if (v >= image.size() || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

bool is_involution(const std::vector<std::uint64_t>& image) {
  for (std::uint64_t j = 0; j < image.size(); ++j) {
    if (image[j] >= image.size() || image[image[j]] != j) return false;
  }
  return true;
}

bool satisfies_pair_law(const GasketPermutation& s) {
  const std::uint64_t top = (std::uint64_t{1} << s.n) - 1;
  for (std::uint64_t k = 0; 2 * k + 1 < s.image.size(); ++k) {
    if (s.image[2 * k] + s.image[2 * k + 1] != top || s.image[2 * k] % 2 != 0) return false;
  }
  return true;
}

GasketPermutation sigma(unsigned n) {
  if (n == 0) throw std::invalid_argument("sigma is defined for n >= 1");
  if (n > 40) throw std::invalid_argument("sigma limited to n <= 40");
  GasketPermutation s{1, {0, 1}};
  for (unsigned level = 2; level <= n; ++level) {
    const Bits v = nu(level);
    const std::uint64_t half = std::uint64_t{1} << (level - 1);
    std::vector<std::uint64_t> next(2 * half);
    for (std::uint64_t idx = 0; idx < next.size(); ++idx) {
      const std::uint8_t bit = v[idx / 2];
      next[idx] = s.image[idx % half] + half * (idx % 2 == 0 ? 1u - bit : bit);
    }
    s = {level, std::move(next)};
  }
  if (!is_permutation(s.image) || !is_involution(s.image) || !satisfies_pair_law(s)) {
    throw std::logic_error("gasket permutation failed its invariants at n = " +
                           std::to_string(n));
  }
  return s;
}

std::uint64_t sigma_closed(unsigned n, std::uint64_t k) {
  if (n == 0 || n > 63) throw std::invalid_argument("sigma_closed needs 1 <= n <= 63");
  if (k >> n) throw std::out_of_range("index outside 0..2^n-1");
  auto digit = [&](unsigned j) { return static_cast<unsigned>((k >> (n - j)) & 1u); };
  // rows[r] = g^(r), built once by the recurrence.
  std::vector<Bits> rows(n + 1);
  rows[1] = {1};
  for (unsigned r = 2; r <= n; ++r) {
    rows[r].assign(r, 1);
    for (unsigned m = 1; m + 1 < r; ++m) rows[r][m] = rows[r - 1][m - 1] ^ rows[r - 1][m];
  }
  std::uint64_t out = 0;
  for (unsigned kappa = 1; kappa < n; ++kappa) {
    const Bits& g = rows[n - kappa + 1];
    unsigned acc = 1;
    for (unsigned i = 1; i <= n - kappa + 1; ++i) acc ^= digit(kappa + i - 1) & g[i - 1];
    out = (out << 1) | acc;
  }
  return (out << 1) | digit(n);
}

ConjugacyResult verify_conjugacy(unsigned n) {
  const std::vector<LevelMatrix> bbs_levels = build_level(System::bbs(1), n);
  const std::vector<LevelMatrix> lamp_levels = build_level(System::lamplighter(), n);
  const GasketPermutation s = sigma(n == 0 ? 1 : n);
  std::vector<std::uint64_t> mu = s.image;
  if (n == 0) mu = {0};

  const SparseIntMatrix a_b = bbs_levels[0].to_sparse() + bbs_levels[1].to_sparse();
  const SparseIntMatrix a_l = lamp_levels[0].to_sparse() + lamp_levels[1].to_sparse();
  ConjugacyResult r;
  // relabel(perm) places M[j, c] at (perm j, perm c).
  r.level_identity = a_l.relabel(mu) == a_b;
  const TransitionMatrix t_b = transition_from_levels(bbs_levels);
  const TransitionMatrix t_l = transition_from_levels(lamp_levels);
  r.operator_identity =
      t_b.scale() == t_l.scale() && t_l.integer_part().relabel(mu) == t_b.integer_part();
  return r;
}

TreeAutomorphismWitness tree_automorphism_witness() {
  TreeAutomorphismWitness w;
  const SparseIntMatrix s_b = build_transition(System::bbs(1), 2).integer_part();
  const SparseIntMatrix s_l = build_transition(System::lamplighter(), 2).integer_part();
  for (std::uint64_t i = 0; i < 4; ++i) {
    w.bbs_diagonal[i] = s_b.at(i, i);
    w.lamplighter_diagonal[i] = s_l.at(i, i);
  }
  // Index = 2 k_1 + k_2. An automorphism flips k_1 by a and k_2 by b or c
  // depending on the (original) first digit.
  for (unsigned a = 0; a < 2; ++a) {
    for (unsigned b = 0; b < 2; ++b) {
      for (unsigned c = 0; c < 2; ++c) {
        std::vector<std::uint64_t> perm(4);
        for (std::uint64_t idx = 0; idx < 4; ++idx) {
          const std::uint64_t k1 = idx >> 1, k2 = idx & 1u;
          perm[idx] = ((k1 ^ a) << 1) | (k2 ^ (k1 ? c : b));
        }
        const SparseIntMatrix moved = s_l.relabel(perm);
        std::array<std::int64_t, 4> diag{};
        for (std::uint64_t i = 0; i < 4; ++i) diag[i] = moved.at(i, i);
        bool known = false;
        for (const auto& d : w.reachable_diagonals) known = known || d == diag;
        if (!known) w.reachable_diagonals.push_back(diag);
        w.some_automorphism_conjugates = w.some_automorphism_conjugates || moved == s_b;
      }
    }
  }
  w.sigma2 = sigma(2).image;
  w.sigma2_preserves_siblings = true;
  for (std::uint64_t m = 0; m < 2; ++m) {
    w.sigma2_preserves_siblings =
        w.sigma2_preserves_siblings && (w.sigma2[2 * m] >> 1) == (w.sigma2[2 * m + 1] >> 1);
  }
  return w;
}

}  // namespace bbs

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace bbs {

using Bits = std::vector<std::uint8_t>;

// Row n >= 1 of Pascal's triangle mod 2, (g_1, ..., g_n), by the additive
// recurrence; gasket_row_lucas uses C(n-1, m-1) odd iff (m-1) & (n-1) == m-1.
Bits gasket_row(unsigned n);
Bits gasket_row_lucas(unsigned n);

// alpha = 0: (s, s); alpha = 1: (s, complement of s).
Bits t_operator(unsigned alpha, const Bits& s);

// nu^(n) = T_{g_1} o ... o T_{g_{n-1}} (0), innermost applied first.
Bits nu(unsigned n);
// nu_k = sum_j k_j g_j mod 2 over the n-1 binary digits of k, most significant first.
Bits nu_closed(unsigned n);

struct GasketPermutation {
  unsigned n = 0;
  std::vector<std::uint64_t> image;  // image[j] = mu_j
};

bool is_permutation(const std::vector<std::uint64_t>& image);
bool is_involution(const std::vector<std::uint64_t>& image);
// mu_{2k} + mu_{2k+1} = 2^n - 1 and mu_{2k} even for all k.
bool satisfies_pair_law(const GasketPermutation& s);

// Recursive construction from sigma_{n-1} and nu^(n). Throws std::logic_error
// if the result is not an involutive permutation obeying the pair law.
GasketPermutation sigma(unsigned n);
// The image of k computed digit by digit.
std::uint64_t sigma_closed(unsigned n, std::uint64_t k);

struct ConjugacyResult {
  // (a_0 + a_1) lamplighter [j, c] == (a_0 + a_1) BBS k=1 [mu_j, mu_c]
  bool level_identity = false;
  // S_L[j, c] == S_B[mu_j, mu_c]
  bool operator_identity = false;
  bool passed() const { return level_identity && operator_identity; }
};

// Exact check by relabeling sparse triplets; no permutation matrix is formed.
ConjugacyResult verify_conjugacy(unsigned n);

struct TreeAutomorphismWitness {
  std::array<std::int64_t, 4> bbs_diagonal{};
  std::array<std::int64_t, 4> lamplighter_diagonal{};
  // Diagonals of S_L relabeled by each of the 8 level-2 tree automorphisms.
  std::vector<std::array<std::int64_t, 4>> reachable_diagonals;
  bool some_automorphism_conjugates = false;
  std::vector<std::uint64_t> sigma2;
  // sigma_2 keeps every pair of siblings {2m, 2m+1} together.
  bool sigma2_preserves_siblings = false;
};

TreeAutomorphismWitness tree_automorphism_witness();

}  // namespace bbs

#include <doctest.h>

#include <vector>

#include "bbs/gasket.hpp"
#include "bbs/level_matrix.hpp"
#include "bbs/transition.hpp"

using namespace bbs;

namespace {

// Pascal's triangle mod 2 by explicit binomials (exact up to row 64 in 128 bits
// is not needed: parity of C(n, m) via Kummer's carry count).
unsigned binomial_parity(unsigned n, unsigned m) {
  unsigned carries = 0, carry = 0;
  for (unsigned a = m, b = n - m; a || b || carry; a >>= 1, b >>= 1) {
    const unsigned s = (a & 1) + (b & 1) + carry;
    carry = s >> 1;
    carries += carry;
  }
  return carries == 0 ? 1 : 0;
}

}  // namespace

TEST_CASE("gasket rows") {
  CHECK(gasket_row(1) == Bits{1});
  CHECK(gasket_row(5) == Bits{1, 0, 0, 0, 1});
  CHECK(gasket_row(7) == Bits{1, 0, 1, 0, 1, 0, 1});
  for (unsigned n = 1; n <= 64; ++n) {
    const Bits g = gasket_row(n);
    CHECK(g == gasket_row_lucas(n));
    CHECK(g.front() == 1);
    CHECK(g.back() == 1);
    for (unsigned m = 1; m <= n; ++m) CHECK(g[m - 1] == binomial_parity(n - 1, m - 1));
  }
}

TEST_CASE("T operators") {
  CHECK(t_operator(1, {0}) == Bits{0, 1});
  CHECK(t_operator(0, {0, 1}) == Bits{0, 1, 0, 1});
  CHECK(t_operator(1, {0, 0}) == Bits{0, 0, 1, 1});
}

TEST_CASE("nu sequences") {
  CHECK(nu(2) == Bits{0, 1});
  CHECK(nu(3) == Bits{0, 0, 1, 1});
  CHECK(nu(4) == Bits{0, 1, 1, 0, 1, 0, 0, 1});
  for (unsigned n = 2; n <= 20; ++n) {
    const Bits v = nu(n);
    CHECK(v.size() == (std::size_t{1} << (n - 1)));
    CHECK(v[0] == 0);
    CHECK(v == nu_closed(n));
  }
}

TEST_CASE("sigma") {
  CHECK(sigma(1).image == std::vector<std::uint64_t>{0, 1});
  CHECK(sigma(2).image == std::vector<std::uint64_t>{2, 1, 0, 3});
  CHECK(sigma(3).image == std::vector<std::uint64_t>{6, 1, 4, 3, 2, 5, 0, 7});
  CHECK(sigma_closed(2, 0) == 2);
  CHECK(sigma_closed(2, 3) == 3);
  CHECK(sigma_closed(3, 0) == 6);
  for (unsigned n = 1; n <= 16; ++n) {
    const GasketPermutation s = sigma(n);
    for (std::uint64_t k = 0; k < s.image.size(); ++k) REQUIRE(sigma_closed(n, k) == s.image[k]);
  }
  for (unsigned n = 1; n <= 20; ++n) {
    const GasketPermutation s = sigma(n);
    CHECK(is_permutation(s.image));
    CHECK(is_involution(s.image));
    CHECK(satisfies_pair_law(s));
  }
  CHECK_FALSE(is_involution({1, 2, 0}));
  CHECK_FALSE(is_permutation({0, 0}));
  CHECK_FALSE(satisfies_pair_law({2, {1, 2, 0, 3}}));
}

TEST_CASE("conjugacy") {
  const ConjugacyResult one = verify_conjugacy(1);
  CHECK(one.passed());
  const TransitionMatrix b2 = build_transition(System::bbs(1), 2);
  const TransitionMatrix l2 = build_transition(System::lamplighter(), 2);
  CHECK(l2.at(0, 1) == doctest::Approx(0.5));
  CHECK(b2.at(2, 1) == doctest::Approx(0.5));
  for (unsigned n = 1; n <= 14; ++n) {
    const ConjugacyResult r = verify_conjugacy(n);
    CHECK(r.level_identity);
    CHECK(r.operator_identity);
  }
}

TEST_CASE("a wrong permutation breaks the identity") {
  const auto b = build_level(System::bbs(1), 4);
  const auto l = build_level(System::lamplighter(), 4);
  std::vector<std::uint64_t> mu = sigma(4).image;
  std::swap(mu[0], mu[1]);
  const SparseIntMatrix ab = b[0].to_sparse() + b[1].to_sparse();
  const SparseIntMatrix al = l[0].to_sparse() + l[1].to_sparse();
  CHECK_FALSE(al.relabel(mu) == ab);
  CHECK(al.relabel(sigma(4).image) == ab);
}

TEST_CASE("no level-2 tree automorphism conjugates") {
  const TreeAutomorphismWitness w = tree_automorphism_witness();
  CHECK(w.bbs_diagonal == std::array<std::int64_t, 4>{2, 0, 0, 2});
  CHECK(w.lamplighter_diagonal == std::array<std::int64_t, 4>{0, 0, 2, 2});
  CHECK(w.reachable_diagonals.size() == 2);
  for (const auto& d : w.reachable_diagonals) {
    CHECK((d == std::array<std::int64_t, 4>{0, 0, 2, 2} || d == std::array<std::int64_t, 4>{2, 2, 0, 0}));
  }
  CHECK_FALSE(w.some_automorphism_conjugates);
  CHECK(w.sigma2 == std::vector<std::uint64_t>{2, 1, 0, 3});
  CHECK_FALSE(w.sigma2_preserves_siblings);
}

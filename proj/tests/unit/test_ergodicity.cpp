#include <doctest.h>

#include <cmath>
#include <random>

#include "bbs/errors.hpp"
#include "bbs/ergodicity.hpp"

using namespace bbs;

namespace {

// Entrywise-positive power search by dense integer products (small inputs only).
unsigned first_positive_power(const TransitionMatrix& t, unsigned smax) {
  const std::size_t n = t.dim();
  std::vector<long double> s(n * n, 0), p(n * n, 0), q(n * n);
  for (const Triplet& e : t.integer_part().entries()) s[e.row * n + e.col] = e.value;
  p = s;
  for (unsigned k = 1; k <= smax; ++k) {
    if (std::all_of(p.begin(), p.end(), [](long double x) { return x > 0; })) return k;
    std::fill(q.begin(), q.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t j = 0; j < n; ++j) q[i * n + j] += p[i * n + m] * s[m * n + j];
    // Only the sign pattern matters; keep magnitudes bounded.
    for (auto& x : q) x = x > 0 ? 1 : 0;
    std::swap(p, q);
  }
  return 0;
}

TransitionMatrix flip() {
  return TransitionMatrix(System::custom(), 1, 2, SparseIntMatrix(2, {{0, 1, 2}, {1, 0, 2}}));
}

}  // namespace

TEST_CASE("power criterion on small operators") {
  const ErgodicityCertificate c = check_ergodic_power(build_transition(System::bbs(1), 2), 8);
  CHECK(c.verdict);
  CHECK(c.s0 >= 1);
  CHECK(c.s0 <= 8);
  CHECK(c.alpha > 0.0);

  const ErgodicityCertificate f = check_ergodic_power(flip(), 1000);
  CHECK_FALSE(f.verdict);
  CHECK(f.pattern_cycle);

  const TransitionMatrix id(System::custom(), 2, 2, SparseIntMatrix::identity(4, 2));
  CHECK_FALSE(check_ergodic_power(id, 50).verdict);
  CHECK_THROWS_AS(check_ergodic_power(id, 0), std::invalid_argument);
}

TEST_CASE("alpha is the exact minimum of M^s0") {
  const TransitionMatrix t = build_transition(System::bbs(1), 1);
  const ErgodicityCertificate c = check_ergodic_power(t, 4);
  CHECK(c.s0 == 1);
  CHECK(c.alpha_exact == "1/2");
  CHECK(c.alpha == doctest::Approx(0.5));
}

TEST_CASE("spectral and power criteria agree on the automaton operators") {
  for (unsigned k = 1; k <= 3; ++k) {
    for (unsigned n = 1; n <= 8; ++n) {
      const TransitionMatrix t = build_transition(System::bbs(k), n);
      const std::uint64_t d = t.dim();
      ErgodicityCertificate c = check_ergodic_power(t, static_cast<unsigned>((d - 1) * (d - 1) + 1));
      const SpectrumReport r = numeric_spectrum(t);
      attach_spectral_reason(c, r);
      CHECK(c.verdict == check_ergodic_spectral(r));
      REQUIRE(c.spectral_reason);
      CHECK(c.spectral_reason->one_multiplicity == 1);
      if (n <= 5) CHECK(c.s0 == first_positive_power(t, 200));
    }
  }
  for (unsigned n = 1; n <= 8; ++n) {
    const TransitionMatrix t = build_transition(System::lamplighter(), n);
    CHECK(check_ergodic_power(t, 100000).verdict);
    CHECK(check_ergodic_spectral(numeric_spectrum(t)));
  }
}

TEST_CASE("random doubly stochastic mixtures") {
  std::mt19937_64 rng(99);
  int ergodic = 0, non_ergodic = 0;
  const BirkhoffShape shapes[] = {BirkhoffShape::Mixed, BirkhoffShape::Blocks,
                                  BirkhoffShape::Bipartite};
  for (int trial = 0; trial < 100; ++trial) {
    const TransitionMatrix t = random_birkhoff_mixture(rng, 16, shapes[trial % 3]);
    CHECK(check_double_stochastic(t));
    const bool power = check_ergodic_power(t, 226).verdict;
    CHECK(power == check_ergodic_spectral(numeric_spectrum(t)));
    CHECK(power == support_graph_ergodic(t));
    CHECK(power == (first_positive_power(t, 226) != 0));
    (power ? ergodic : non_ergodic)++;
  }
  // The generator produces both kinds.
  CHECK(ergodic > 10);
  CHECK(non_ergodic > 10);
}

TEST_CASE("stationary distribution") {
  auto uniform_within = [](const std::vector<double>& pi, double tol) {
    for (double x : pi) {
      if (std::fabs(x - 1.0 / pi.size()) > tol) return false;
    }
    return true;
  };
  CHECK(uniform_within(stationary_distribution(build_transition(System::bbs(1), 3)), 1e-10));
  CHECK(uniform_within(stationary_distribution(build_transition(System::lamplighter(), 2)), 1e-10));
  const auto one = stationary_distribution(build_transition(System::bbs(1), 0));
  CHECK(one == std::vector<double>{1.0});
  CHECK_THROWS_AS(stationary_distribution(flip()), NotErgodic);
}

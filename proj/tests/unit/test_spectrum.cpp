#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bbs/errors.hpp"
#include "bbs/spectrum.hpp"

using namespace bbs;

namespace {

std::vector<double> eigen_reference(const TransitionMatrix& t) {
  const std::size_t n = t.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const Triplet& e : t.integer_part().entries()) m(e.row, e.col) = e.value;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = es.eigenvalues()[i] / t.scale();
  return v;
}

std::uint64_t count_near(const std::vector<double>& v, double x) {
  return static_cast<std::uint64_t>(
      std::count_if(v.begin(), v.end(), [&](double y) { return std::fabs(y - x) < 1e-7; }));
}

double cospi(int p, int q) { return std::cos(std::numbers::pi * p / q); }

}  // namespace

TEST_CASE("k1 closed form") {
  const SpectrumReport r7 = exact_spectrum_k1(7);
  CHECK(r7.multiplicity_of(EigenCos{1, 2}) == 43);
  CHECK(r7.multiplicity_of(EigenCos{1, 3}) == 18);
  CHECK(exact_spectrum_k1(10).multiplicity_of(EigenCos{5, 11}) == 1);
  const SpectrumReport r1 = exact_spectrum_k1(1);
  CHECK(r1.entries.size() == 2);
  CHECK(r1.multiplicity_of(EigenOne{}) == 1);
  CHECK(r1.multiplicity_of(EigenCos{1, 2}) == 1);
  for (unsigned n = 0; n <= 40; ++n) {
    const SpectrumReport r = exact_spectrum_k1(n);
    CHECK(r.total_multiplicity() == (std::uint64_t{1} << n));
    CHECK(r.multiplicity_of(EigenOne{}) == 1);
  }
}

TEST_CASE("table of multiplicities for translation") {
  // Rows n = 1..10; columns m_{1,2}, m_{1,3}, m_{1,4}, m_{1,5}, m_{1,6}, m_{1,7}, m_{1,8}.
  const std::uint64_t table[10][7] = {
      {1, 0, 0, 0, 0, 0, 0},     {1, 1, 0, 0, 0, 0, 0},      {3, 1, 1, 0, 0, 0, 0},
      {5, 2, 1, 1, 0, 0, 0},     {11, 5, 2, 1, 1, 0, 0},     {21, 9, 4, 2, 1, 1, 0},
      {43, 18, 9, 4, 2, 1, 1},   {85, 37, 17, 8, 4, 2, 1},   {171, 73, 34, 17, 8, 4, 2},
      {341, 146, 68, 33, 16, 8, 4}};
  for (unsigned n = 1; n <= 10; ++n) {
    const SpectrumReport r = exact_spectrum_k1(n);
    for (int q = 2; q <= 8; ++q) CHECK(r.multiplicity_of(EigenCos{1, q}) == table[n - 1][q - 2]);
  }
}

TEST_CASE("closed form against eigensolver and an independent solver") {
  for (unsigned n = 1; n <= 10; ++n) {
    const TransitionMatrix t = build_transition(System::bbs(1), n);
    const SpectrumReport num = numeric_spectrum(t);
    const SpectrumReport ex = exact_spectrum_k1(n);
    CHECK(same_multiplicity_map(ex, num));
    for (const SpectrumEntry& e : num.entries) {
      CHECK(is_labeled(e.descriptor));
      CHECK(std::fabs(e.center - e.value) < 1e-9);
    }
    if (n <= 8) {
      const auto ref = eigen_reference(t);
      for (const SpectrumEntry& e : ex.entries) CHECK(count_near(ref, e.value) == e.multiplicity);
    }
  }
}

TEST_CASE("p-independence and exact set for translation") {
  for (unsigned n = 1; n <= 8; ++n) {
    const SpectrumReport r = numeric_spectrum(build_transition(System::bbs(1), n));
    std::size_t expected_size = 1;
    for (int q = 2; q <= static_cast<int>(n) + 1; ++q) {
      const std::uint64_t m1 = r.multiplicity_at(cospi(1, q));
      for (int p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        ++expected_size;
        CHECK(r.multiplicity_at(cospi(p, q)) == m1);
      }
    }
    CHECK(r.entries.size() == expected_size);
  }
}

TEST_CASE("numeric examples for larger capacities") {
  const SpectrumReport k2 = numeric_spectrum(build_transition(System::bbs(2), 6));
  CHECK(k2.multiplicity_of(EigenCos{1, 2}) == 22);
  CHECK(k2.multiplicity_of(EigenCos{1, 3}) == 3);
  const SpectrumReport k3 = numeric_spectrum(build_transition(System::bbs(3), 4));
  CHECK(k3.multiplicity_of(EigenRational{1, 4}) == 2);
  const SpectrumReport k5 = numeric_spectrum(build_transition(System::bbs(5), 5));
  CHECK(k5.multiplicity_of(EigenRational{1, 3}) == 1);
  CHECK(k5.multiplicity_of(EigenCos{1, 2}) == 1);

  for (unsigned k = 2; k <= 5; ++k) {
    for (unsigned n = 1; n <= 8; ++n) {
      const TransitionMatrix t = build_transition(System::bbs(k), n);
      const SpectrumReport r = numeric_spectrum(t);
      const auto ref = eigen_reference(t);
      CHECK(r.total_multiplicity() == t.dim());
      for (const SpectrumEntry& e : r.entries) {
        CHECK(e.value >= -1.0 - 1e-12);
        CHECK(e.value <= 1.0 + 1e-12);
        if (is_labeled(e.descriptor)) CHECK(count_near(ref, e.value) == e.multiplicity);
      }
    }
  }
}

TEST_CASE("trace moments") {
  const TransitionMatrix t = build_transition(System::bbs(1), 2);
  const TraceAudit a = audit_trace_moments(t, exact_spectrum_k1(2), 2);
  CHECK(a.passed);
  CHECK(a.exact);
  CHECK(a.integer_traces == std::vector<std::int64_t>{4, 4, 24});
  for (unsigned k = 1; k <= 5; ++k) {
    for (unsigned n = 1; n <= 9; ++n) {
      const TransitionMatrix tk = build_transition(System::bbs(k), n);
      CHECK(verify_trace_moments(tk, numeric_spectrum(tk), 8));
    }
  }
  // A report that moves one eigenvalue fails the audit.
  SpectrumReport wrong = exact_spectrum_k1(3);
  wrong.entries.front().descriptor = EigenRational{-1, 1};
  wrong.entries.front().value = -1.0;
  CHECK_FALSE(verify_trace_moments(build_transition(System::bbs(1), 3), wrong, 8));
}

TEST_CASE("spectral ergodicity criterion") {
  for (unsigned n = 1; n <= 10; ++n) {
    CHECK(check_ergodic_spectral(exact_spectrum_k1(n)));
    CHECK(check_ergodic_spectral(numeric_spectrum(build_transition(System::lamplighter(), n))));
  }
  SpectrumReport r = exact_spectrum_k1(2);
  r.entries.insert(r.entries.begin(), SpectrumEntry{EigenRational{-1, 1}, -1.0, 1, -1.0, 0.0});
  CHECK_FALSE(check_ergodic_spectral(r));
}

TEST_CASE("counting function") {
  const SpectrumReport r = exact_spectrum_k1(2);
  CHECK(empirical_cdf(r, 0.0) == doctest::Approx(1.0));
  CHECK(empirical_cdf(r, 1.0) == doctest::Approx(0.0));
  CHECK(empirical_cdf(r, 0.5) == doctest::Approx(0.5));
  // Read literally the threshold is 4 cos(pi x): everything counts until x > 0.5.
  CHECK(empirical_cdf_literal(r, 0.25) == doctest::Approx(1.0));
}

TEST_CASE("rates") {
  CHECK(multiple_eigenvalue_rate(exact_spectrum_k1(2)).multiple_rate == doctest::Approx(0.0));
  SpectrumReport flat;
  flat.dimension = 8;
  flat.entries.push_back({EigenOne{}, 1.0, 8, 1.0, 0.0});
  CHECK(multiple_eigenvalue_rate(flat).multiple_rate == doctest::Approx(1.0));
  const SpectrumReport k2 = numeric_spectrum(build_transition(System::bbs(2), 2));
  CHECK(k2.multiplicity_of(EigenCos{1, 2}) == 1);
  CHECK(multiple_eigenvalue_rate(k2).multiple_rate == doctest::Approx(0.0));
}

TEST_CASE("symmetry of the spectrum") {
  for (unsigned n = 1; n <= 10; ++n) CHECK(symmetry_discrepancies(exact_spectrum_k1(n)).empty());
  // k >= 2 is only almost symmetric; the discrepancy list is finite and labeled.
  const auto d = symmetry_discrepancies(numeric_spectrum(build_transition(System::bbs(2), 8)));
  for (const auto& x : d) CHECK(x.positive != x.negative);
}

TEST_CASE("clustering and relabeling") {
  SpectrumSettings s;
  // Two values 1e-7 apart around 1/2 both sit within the match tolerance;
  // the closer group keeps the label.
  const SpectrumReport r = spectrum_from_eigenvalues(System::custom(), 2, 4,
                                                     {0.5 + 4e-7, 0.5 - 5e-8, 1.0, 0.3}, s, 1);
  CHECK(r.multiplicity_of(EigenCos{1, 3}) == 1);
  CHECK(std::count_if(r.entries.begin(), r.entries.end(),
                      [](const SpectrumEntry& e) { return !is_labeled(e.descriptor); }) == 2);
  CHECK_FALSE(r.warnings.empty());

  // A loose match tolerance reaching two candidates leaves the group unlabeled.
  SpectrumSettings loose;
  loose.match_tolerance = 0.2;
  const SpectrumReport amb = spectrum_from_eigenvalues(System::custom(), 3, 4, {0.6}, loose, 1);
  CHECK_FALSE(is_labeled(amb.entries[0].descriptor));
  CHECK_FALSE(amb.warnings.empty());

  SpectrumSettings bad;
  bad.cluster_gap = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.max_dense_level = 15;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("dense cap") {
  SpectrumSettings s;
  s.max_dense_level = 5;
  CHECK_THROWS_AS(numeric_spectrum(build_transition(System::bbs(2), 6), s), InfeasibleSize);
}

TEST_CASE("cache and dispatch") {
  SpectrumCache cache;
  const SpectrumReport& a = cache.get(System::bbs(1), 5);
  const SpectrumReport& b = cache.get(System::bbs(1), 5);
  CHECK(&a == &b);
  CHECK(compute_spectrum(System::bbs(1), 6, {}, SpectrumMethod::Numeric).warnings.empty());
  CHECK_THROWS_AS(compute_spectrum(System::bbs(2), 3, {}, SpectrumMethod::Exact),
                  std::invalid_argument);
}

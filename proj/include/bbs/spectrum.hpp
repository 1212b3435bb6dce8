#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "bbs/system.hpp"
#include "bbs/transition.hpp"

namespace bbs {

// Eigenvalue 1.
struct EigenOne {
  bool operator==(const EigenOne&) const = default;
};
// cos(p pi / q) with gcd(p, q) = 1 and 1 <= p < q.
struct EigenCos {
  int p;
  int q;
  bool operator==(const EigenCos&) const = default;
};
// num / den in lowest terms, den > 0.
struct EigenRational {
  std::int64_t num;
  std::int64_t den;
  bool operator==(const EigenRational&) const = default;
};
// A group of numerically coincident eigenvalues that matched no candidate.
struct EigenCluster {
  double center;
  double halfwidth;
  bool operator==(const EigenCluster&) const = default;
};

using Descriptor = std::variant<EigenOne, EigenCos, EigenRational, EigenCluster>;

double descriptor_value(const Descriptor& d);
// "1", "cos(1/3*pi)", "1/3", "cluster".
std::string descriptor_label(const Descriptor& d);
bool is_labeled(const Descriptor& d);

struct SpectrumEntry {
  Descriptor descriptor;
  double value;  // exact value of the descriptor, or the cluster center
  std::uint64_t multiplicity;
  // Mean and half-spread of the eigenvalues behind the entry (value and 0
  // for closed-form reports).
  double center = 0.0;
  double halfwidth = 0.0;
};

struct SpectrumSettings {
  double cluster_gap = 1e-8;
  double match_tolerance = 1e-6;
  unsigned max_dense_level = 12;

  static constexpr unsigned kHardDenseLevel = 14;
  // Throws std::invalid_argument on non-positive tolerances or a cap above 14.
  void validate() const;
};

struct SpectrumReport {
  System system;
  unsigned level = 0;
  std::int64_t scale = 1;
  std::uint64_t dimension = 1;
  std::vector<SpectrumEntry> entries;  // ascending by value
  std::vector<std::string> warnings;

  std::uint64_t total_multiplicity() const;
  // Sum of multiplicities of entries within tol of value.
  std::uint64_t multiplicity_at(double value, double tol = 1e-9) const;
  std::uint64_t multiplicity_of(const Descriptor& d) const;
};

// Multiplicity of each cos(p pi / q), gcd(p, q) = 1, in M_1^(n): the
// nearest integer to 2^n / (2^q - 1) for q <= n+1, else 0.
std::uint64_t k1_cos_multiplicity(unsigned n, unsigned q);

// Closed-form spectrum of BBS translation (k = 1) at level n <= 62.
SpectrumReport exact_spectrum_k1(unsigned n);

struct Candidate {
  Descriptor descriptor;
  double value;
};

// {1} U {cos(p pi/q) : 2 <= q <= n+1} U {+-j/(k+1) : 0 <= j <= k+1}, with
// values that coincide exactly listed once (One before cos before rational).
std::vector<Candidate> candidate_grid(unsigned n, unsigned k);

// Groups sorted eigenvalues of M and relabels groups that match exactly one
// candidate. `k` selects the rational candidates +-j/(k+1).
SpectrumReport spectrum_from_eigenvalues(const System& system, unsigned level,
                                         std::int64_t scale, std::vector<double> eigenvalues,
                                         const SpectrumSettings& settings, unsigned k);

// Dense eigendecomposition of S, divided by the scale. Throws InfeasibleSize
// when the level exceeds settings.max_dense_level and EigensolverFailure on
// non-convergence.
SpectrumReport numeric_spectrum(const TransitionMatrix& t, const SpectrumSettings& settings = {});

enum class SpectrumMethod {
  Auto,     // closed form for BBS k = 1, dense eigensolver otherwise
  Exact,    // closed form only; std::invalid_argument for other systems
  Numeric,  // dense eigensolver
};

SpectrumReport compute_spectrum(const System& system, unsigned n,
                                const SpectrumSettings& settings = {},
                                SpectrumMethod method = SpectrumMethod::Auto);

// Memoizes compute_spectrum per (system, level). Not thread-safe.
class SpectrumCache {
 public:
  explicit SpectrumCache(SpectrumSettings settings = {},
                         SpectrumMethod method = SpectrumMethod::Auto)
      : settings_(settings), method_(method) {}

  const SpectrumReport& get(const System& system, unsigned n);
  const SpectrumSettings& settings() const { return settings_; }

 private:
  SpectrumSettings settings_;
  SpectrumMethod method_;
  std::map<std::tuple<int, unsigned, unsigned>, SpectrumReport> reports_;
};

struct TraceAudit {
  bool passed = true;
  bool exact = false;  // all eigenvalues rational, compared exactly
  std::vector<std::int64_t> integer_traces;
  std::vector<long double> spectral_traces;
  std::vector<double> relative_errors;
};

// Compares trace(S^m), computed exactly in integers, against
// sum multiplicity * (scale * lambda)^m for m = 0..mmax.
TraceAudit audit_trace_moments(const TransitionMatrix& t, const SpectrumReport& report,
                               unsigned mmax, double relative_tolerance = 1e-6);
bool verify_trace_moments(const TransitionMatrix& t, const SpectrumReport& report,
                          unsigned mmax);

// Eigenvalue 1 simple and -1 absent.
bool check_ergodic_spectral(const SpectrumReport& report, double tol = 1e-6);

// Fraction of eigenvalues of M with lambda <= cos(pi x). Comparing the
// operator S = scale * M against scale * cos(pi x) gives the same count.
double empirical_cdf(const SpectrumReport& report, double x, double tol = 1e-9);
// The counting function read literally: eigenvalues of M against
// 2(k+1) cos(pi x) = scale * cos(pi x).
double empirical_cdf_literal(const SpectrumReport& report, double x, double tol = 1e-9);

struct RateReport {
  // Mass of eigenvalues with multiplicity >= 2, over 2^n.
  double multiple_rate = 0.0;
  // Mass of all cos(p pi/q) and +-j/(k+1) classes, over 2^n.
  double class_rate = 0.0;
};
RateReport multiple_eigenvalue_rate(const SpectrumReport& report);

struct SymmetryDiscrepancy {
  double value;  // the non-negative member of the pair
  std::string label;
  std::uint64_t positive;
  std::uint64_t negative;
};
// Pairs each eigenvalue v in (0, 1) with -v and lists pairs whose
// multiplicities differ. The Perron value 1 is left out.
std::vector<SymmetryDiscrepancy> symmetry_discrepancies(const SpectrumReport& report,
                                                        double tol = 1e-6);

// Same (value, multiplicity) multiset, values compared within tol.
bool same_multiplicity_map(const SpectrumReport& a, const SpectrumReport& b, double tol = 1e-9);

}  // namespace bbs

#include "bbs/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "bbs/errors.hpp"

namespace bbs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

EigenRational reduced(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g > 1 ? EigenRational{num / g, den / g} : EigenRational{num, den};
}

void sort_entries(std::vector<SpectrumEntry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
}

}  // namespace

double descriptor_value(const Descriptor& d) {
  return std::visit(
      Overloaded{
          [](const EigenOne&) { return 1.0; },
          [](const EigenCos& c) {
            if (2 * c.p == c.q) return 0.0;
            if (3 * c.p == c.q) return 0.5;
            if (3 * c.p == 2 * c.q) return -0.5;
            return std::cos(std::numbers::pi * c.p / c.q);
          },
          [](const EigenRational& r) {
            return static_cast<double>(r.num) / static_cast<double>(r.den);
          },
          [](const EigenCluster& c) { return c.center; },
      },
      d);
}

std::string descriptor_label(const Descriptor& d) {
  return std::visit(Overloaded{
                        [](const EigenOne&) { return std::string("1"); },
                        [](const EigenCos& c) {
                          return "cos(" + std::to_string(c.p) + "/" + std::to_string(c.q) +
                                 "*pi)";
                        },
                        [](const EigenRational& r) {
                          if (r.den == 1) return std::to_string(r.num);
                          return std::to_string(r.num) + "/" + std::to_string(r.den);
                        },
                        [](const EigenCluster&) { return std::string("cluster"); },
                    },
                    d);
}

bool is_labeled(const Descriptor& d) { return !std::holds_alternative<EigenCluster>(d); }

void SpectrumSettings::validate() const {
  if (!(cluster_gap > 0.0) || !(match_tolerance > 0.0)) {
    throw std::invalid_argument("tolerances must be strictly positive");
  }
  if (max_dense_level > kHardDenseLevel) {
    throw std::invalid_argument("dense-solve cap cannot exceed level " +
                                std::to_string(kHardDenseLevel));
  }
}

std::uint64_t SpectrumReport::total_multiplicity() const {
  std::uint64_t s = 0;
  for (const auto& e : entries) s += e.multiplicity;
  return s;
}

std::uint64_t SpectrumReport::multiplicity_at(double value, double tol) const {
  std::uint64_t s = 0;
  for (const auto& e : entries) {
    if (std::fabs(e.value - value) <= tol) s += e.multiplicity;
  }
  return s;
}

std::uint64_t SpectrumReport::multiplicity_of(const Descriptor& d) const {
  for (const auto& e : entries) {
    if (e.descriptor == d) return e.multiplicity;
  }
  return 0;
}

std::uint64_t k1_cos_multiplicity(unsigned n, unsigned q) {
  if (q < 2 || q > n + 1) return 0;
  if (n > 62) throw std::invalid_argument("level too large for 64-bit multiplicities");
  const unsigned __int128 num = static_cast<unsigned __int128>(1) << n;
  const unsigned __int128 den = (static_cast<unsigned __int128>(1) << q) - 1;
  // den is odd, so 2^n / den is never a half-integer.
  return static_cast<std::uint64_t>((2 * num + den) / (2 * den));
}

SpectrumReport exact_spectrum_k1(unsigned n) {
  if (n > 62) throw InfeasibleSize("exact spectrum is limited to level 62");
  SpectrumReport report;
  report.system = System::bbs(1);
  report.level = n;
  report.scale = 4;
  report.dimension = std::uint64_t{1} << n;
  std::uint64_t used = 0;
  for (unsigned q = 2; q <= n + 1; ++q) {
    const std::uint64_t mult = k1_cos_multiplicity(n, q);
    if (mult == 0) continue;
    for (unsigned p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const EigenCos c{static_cast<int>(p), static_cast<int>(q)};
      report.entries.push_back({c, descriptor_value(c), mult, descriptor_value(c), 0.0});
      used += mult;
    }
  }
  if (used >= report.dimension) {
    throw std::logic_error("closed-form multiplicities exhaust the dimension");
  }
  report.entries.push_back({EigenOne{}, 1.0, report.dimension - used, 1.0, 0.0});
  sort_entries(report.entries);
  return report;
}

std::vector<Candidate> candidate_grid(unsigned n, unsigned k) {
  std::vector<Candidate> grid;
  auto add = [&grid](Descriptor d) {
    const double v = descriptor_value(d);
    for (const auto& c : grid) {
      if (std::fabs(c.value - v) < 1e-12) return;
    }
    grid.push_back({d, v});
  };
  add(EigenOne{});
  for (unsigned q = 2; q <= n + 1; ++q) {
    for (unsigned p = 1; p < q; ++p) {
      if (std::gcd(p, q) == 1) add(EigenCos{static_cast<int>(p), static_cast<int>(q)});
    }
  }
  const auto den = static_cast<std::int64_t>(k) + 1;
  for (std::int64_t j = 0; j <= den; ++j) {
    add(reduced(j, den));
    add(reduced(-j, den));
  }
  return grid;
}

SpectrumReport spectrum_from_eigenvalues(const System& system, unsigned level,
                                         std::int64_t scale, std::vector<double> eigenvalues,
                                         const SpectrumSettings& settings, unsigned k) {
  settings.validate();
  std::sort(eigenvalues.begin(), eigenvalues.end());

  SpectrumReport report;
  report.system = system;
  report.level = level;
  report.scale = scale;
  report.dimension = eigenvalues.size();

  struct Group {
    double lo, hi, sum;
    std::uint64_t count;
    int candidate = -1;
  };
  std::vector<Group> groups;
  for (double v : eigenvalues) {
    if (!groups.empty() && v - groups.back().hi < settings.cluster_gap) {
      auto& g = groups.back();
      g.hi = v;
      g.sum += v;
      ++g.count;
    } else {
      groups.push_back({v, v, v, 1});
    }
  }

  const auto grid = candidate_grid(level, k);
  std::vector<int> owner(grid.size(), -1);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    Group& g = groups[gi];
    const double center = g.sum / static_cast<double>(g.count);
    int match = -1;
    int hits = 0;
    for (std::size_t ci = 0; ci < grid.size(); ++ci) {
      if (std::fabs(grid[ci].value - center) <= settings.match_tolerance) {
        match = static_cast<int>(ci);
        ++hits;
      }
    }
    if (hits > 1) {
      std::ostringstream w;
      w.precision(12);
      w << "eigenvalue group at " << center << " matches " << hits
        << " candidates; left unlabeled";
      report.warnings.push_back(w.str());
      continue;
    }
    if (hits == 0) continue;
    const int prev = owner[match];
    if (prev >= 0) {
      // Two groups near one candidate: the closer one keeps the label.
      const Group& other = groups[prev];
      const double other_center = other.sum / static_cast<double>(other.count);
      const double target = grid[match].value;
      std::ostringstream w;
      w.precision(12);
      w << "two eigenvalue groups lie near " << descriptor_label(grid[match].descriptor)
        << "; the farther one is left unlabeled";
      report.warnings.push_back(w.str());
      if (std::fabs(center - target) < std::fabs(other_center - target)) {
        groups[prev].candidate = -1;
        owner[match] = static_cast<int>(gi);
        g.candidate = match;
      }
      continue;
    }
    owner[match] = static_cast<int>(gi);
    g.candidate = match;
  }

  for (const Group& g : groups) {
    const double center = g.sum / static_cast<double>(g.count);
    const double halfwidth = 0.5 * (g.hi - g.lo);
    if (g.candidate >= 0) {
      const Candidate& c = grid[g.candidate];
      report.entries.push_back({c.descriptor, c.value, g.count, center, halfwidth});
    } else {
      report.entries.push_back({EigenCluster{center, halfwidth}, center, g.count, center, halfwidth});
    }
  }
  sort_entries(report.entries);
  return report;
}

SpectrumReport numeric_spectrum(const TransitionMatrix& t, const SpectrumSettings& settings) {
  settings.validate();
  if (t.level() > settings.max_dense_level) {
    throw InfeasibleSize("level " + std::to_string(t.level()) +
                         " exceeds the dense-solve cap " +
                         std::to_string(settings.max_dense_level));
  }
  std::vector<double> ev = symmetric_eigenvalues(t.dense_integer_part(), t.level());
  const double inv = 1.0 / static_cast<double>(t.scale());
  for (double& v : ev) v *= inv;
  const unsigned k = t.system().kind == SystemKind::Bbs ? t.system().capacity : 1;
  return spectrum_from_eigenvalues(t.system(), t.level(), t.scale(), std::move(ev), settings, k);
}

SpectrumReport compute_spectrum(const System& system, unsigned n,
                                const SpectrumSettings& settings, SpectrumMethod method) {
  const bool closed_form = system.kind == SystemKind::Bbs && system.capacity == 1;
  if (method == SpectrumMethod::Exact && !closed_form) {
    throw std::invalid_argument("closed-form spectrum exists only for BBS k = 1");
  }
  if (closed_form && method != SpectrumMethod::Numeric) return exact_spectrum_k1(n);
  return numeric_spectrum(build_transition(system, n), settings);
}

const SpectrumReport& SpectrumCache::get(const System& system, unsigned n) {
  const auto key = std::make_tuple(static_cast<int>(system.kind), system.capacity, n);
  auto it = reports_.find(key);
  if (it == reports_.end()) {
    it = reports_.emplace(key, compute_spectrum(system, n, settings_, method_)).first;
  }
  return it->second;
}

TraceAudit audit_trace_moments(const TransitionMatrix& t, const SpectrumReport& report,
                               unsigned mmax, double relative_tolerance) {
  using boost::multiprecision::cpp_rational;
  TraceAudit audit;
  audit.integer_traces = trace_moments(t, mmax);

  audit.exact = std::all_of(report.entries.begin(), report.entries.end(), [](const auto& e) {
    if (std::holds_alternative<EigenCluster>(e.descriptor)) return false;
    if (const auto* c = std::get_if<EigenCos>(&e.descriptor)) return c->q == 2 || c->q == 3;
    return true;
  });

  for (unsigned m = 0; m <= mmax; ++m) {
    const long double truth = static_cast<long double>(audit.integer_traces[m]);
    if (audit.exact) {
      cpp_rational sum = 0;
      for (const auto& e : report.entries) {
        cpp_rational lambda;
        if (std::holds_alternative<EigenOne>(e.descriptor)) {
          lambda = 1;
        } else if (const auto* r = std::get_if<EigenRational>(&e.descriptor)) {
          lambda = cpp_rational(r->num, r->den);
        } else {
          const auto& c = std::get<EigenCos>(e.descriptor);
          // cos(pi/2) = 0, cos(pi/3) = 1/2, cos(2pi/3) = -1/2.
          lambda = c.q == 2 ? cpp_rational(0) : cpp_rational(c.p == 1 ? 1 : -1, 2);
        }
        cpp_rational term = 1;
        const cpp_rational base = lambda * t.scale();
        for (unsigned j = 0; j < m; ++j) term *= base;
        sum += term * e.multiplicity;
      }
      audit.spectral_traces.push_back(static_cast<long double>(sum));
      const bool ok = sum == cpp_rational(audit.integer_traces[m]);
      audit.relative_errors.push_back(ok ? 0.0 : 1.0);
      audit.passed = audit.passed && ok;
    } else {
      long double sum = 0.0L, magnitude = 0.0L;
      for (const auto& e : report.entries) {
        const long double term =
            std::pow(static_cast<long double>(t.scale()) * e.value, static_cast<int>(m)) *
            static_cast<long double>(e.multiplicity);
        sum += term;
        magnitude += std::fabs(term);
      }
      audit.spectral_traces.push_back(sum);
      const long double denom = std::max({std::fabs(truth), magnitude, 1.0L});
      const double rel = static_cast<double>(std::fabs(sum - truth) / denom);
      audit.relative_errors.push_back(rel);
      audit.passed = audit.passed && rel <= relative_tolerance;
    }
  }
  return audit;
}

bool verify_trace_moments(const TransitionMatrix& t, const SpectrumReport& report,
                          unsigned mmax) {
  if (report.total_multiplicity() != t.dim()) return false;
  return audit_trace_moments(t, report, mmax).passed;
}

bool check_ergodic_spectral(const SpectrumReport& report, double tol) {
  return report.multiplicity_at(1.0, tol) == 1 && report.multiplicity_at(-1.0, tol) == 0;
}

namespace {

double cdf_below(const SpectrumReport& report, double threshold, double tol) {
  std::uint64_t count = 0;
  for (const auto& e : report.entries) {
    if (e.value <= threshold + tol) count += e.multiplicity;
  }
  return static_cast<double>(count) / static_cast<double>(report.total_multiplicity());
}

}  // namespace

double empirical_cdf(const SpectrumReport& report, double x, double tol) {
  return cdf_below(report, std::cos(std::numbers::pi * x), tol);
}

double empirical_cdf_literal(const SpectrumReport& report, double x, double tol) {
  return cdf_below(report, static_cast<double>(report.scale) * std::cos(std::numbers::pi * x),
                   tol);
}

RateReport multiple_eigenvalue_rate(const SpectrumReport& report) {
  std::uint64_t multiple = 0, classes = 0;
  for (const auto& e : report.entries) {
    if (e.multiplicity >= 2) multiple += e.multiplicity;
    if (std::holds_alternative<EigenCos>(e.descriptor) ||
        std::holds_alternative<EigenRational>(e.descriptor)) {
      classes += e.multiplicity;
    }
  }
  const double total = static_cast<double>(report.total_multiplicity());
  return {static_cast<double>(multiple) / total, static_cast<double>(classes) / total};
}

std::vector<SymmetryDiscrepancy> symmetry_discrepancies(const SpectrumReport& report,
                                                        double tol) {
  std::vector<SymmetryDiscrepancy> out;
  for (const auto& e : report.entries) {
    const double v = std::fabs(e.value);
    if (v <= tol || std::fabs(v - 1.0) <= tol) continue;
    if (e.value < 0.0 && report.multiplicity_at(v, tol) > 0) continue;  // reported from +v
    const std::uint64_t pos = report.multiplicity_at(v, tol);
    const std::uint64_t neg = report.multiplicity_at(-v, tol);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const SymmetryDiscrepancy& d) {
      return std::fabs(d.value - v) <= tol;
    });
    if (pos != neg && !seen) out.push_back({v, descriptor_label(e.descriptor), pos, neg});
  }
  return out;
}

bool same_multiplicity_map(const SpectrumReport& a, const SpectrumReport& b, double tol) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].multiplicity != b.entries[i].multiplicity) return false;
    if (std::fabs(a.entries[i].value - b.entries[i].value) > tol) return false;
  }
  return true;
}

}  // namespace bbs

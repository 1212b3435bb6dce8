#include "bbs/conjectures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bbs/errors.hpp"

namespace bbs {

namespace {

std::vector<LabeledValue> multiple_values(const SpectrumReport& r) {
  std::vector<LabeledValue> out;
  for (const SpectrumEntry& e : r.entries) {
    if (e.multiplicity >= 2) out.push_back({descriptor_label(e.descriptor), e.value});
  }
  return out;
}

std::vector<LabeledValue> all_values(const SpectrumReport& r) {
  std::vector<LabeledValue> out;
  for (const SpectrumEntry& e : r.entries) out.push_back({descriptor_label(e.descriptor), e.value});
  return out;
}

bool contains(const std::vector<LabeledValue>& set, double v, double tol) {
  return std::any_of(set.begin(), set.end(),
                     [&](const LabeledValue& x) { return std::fabs(x.value - v) <= tol; });
}

std::uint64_t multiplicity_near(const SpectrumReport& r, double v, double tol) {
  return r.multiplicity_at(v, tol);
}

}  // namespace

Conjecture1Report conjecture1_check(unsigned j, unsigned n, SpectrumCache& cache) {
  if (j == 0) throw std::invalid_argument("capacity j must be positive");
  if (n < 3) throw std::invalid_argument("conjecture 1 is stated for n >= 3");
  const double tol = cache.settings().match_tolerance;
  const System sys = System::bbs(j);

  Conjecture1Report rep;
  rep.j = j;
  rep.n = n;
  rep.k1_level = (n - 2) / j;

  const std::vector<LabeledValue> at_n = multiple_values(cache.get(sys, n));
  const std::vector<LabeledValue> at_n1 = multiple_values(cache.get(sys, n + 1));
  rep.observed.push_back({"1", 1.0});
  for (const LabeledValue& v : at_n) {
    if (contains(at_n1, v.value, tol) && !contains(rep.observed, v.value, tol)) {
      rep.observed.push_back(v);
    }
  }
  std::sort(rep.observed.begin(), rep.observed.end(),
            [](const LabeledValue& a, const LabeledValue& b) { return a.value < b.value; });

  rep.expected = rep.k1_level == 0 ? std::vector<LabeledValue>{{"1", 1.0}}
                                   : all_values(cache.get(System::bbs(1), rep.k1_level));
  for (const LabeledValue& v : rep.expected) {
    if (!contains(rep.observed, v.value, tol)) rep.missing.push_back(v);
  }
  for (const LabeledValue& v : rep.observed) {
    if (!contains(rep.expected, v.value, tol)) rep.extra.push_back(v);
  }
  return rep;
}

Conjecture2Report conjecture2_scan(unsigned j, unsigned nmax, SpectrumCache& cache) {
  if (j == 0) throw std::invalid_argument("capacity j must be positive");
  if (nmax == 0) throw std::invalid_argument("nmax must be positive");
  const double tol = cache.settings().match_tolerance;
  const System sys = System::bbs(j);

  Conjecture2Report rep;
  rep.j = j;
  rep.nmax = nmax;

  // Every labeled value seen at some level.
  std::vector<LabeledValue> seen;
  for (unsigned n = 1; n <= nmax; ++n) {
    for (const SpectrumEntry& e : cache.get(sys, n).entries) {
      if (is_labeled(e.descriptor) && !contains(seen, e.value, tol)) {
        seen.push_back({descriptor_label(e.descriptor), e.value});
      }
    }
  }
  std::sort(seen.begin(), seen.end(),
            [](const LabeledValue& a, const LabeledValue& b) { return a.value > b.value; });

  for (const LabeledValue& v : seen) {
    MonotoneScanLine line;
    line.label = v.label;
    line.value = v.value;
    for (unsigned n = 1; n <= nmax; ++n) {
      line.multiplicities.push_back(multiplicity_near(cache.get(sys, n), v.value, tol));
    }
    const auto& m = line.multiplicities;
    for (unsigned n = 1; n <= nmax; ++n) {
      if (m[n - 1] > 0) {
        line.first_appearance = n;
        break;
      }
    }
    // Scan back from nmax for the longest positive non-decreasing tail.
    if (m[nmax - 1] > 0) {
      unsigned n0 = nmax;
      while (n0 > 1 && m[n0 - 2] > 0 && m[n0 - 2] <= m[n0 - 1]) --n0;
      line.n_lambda = n0;
    }
    line.monotone_from_first = line.n_lambda != 0 && line.n_lambda == line.first_appearance;
    line.passes = line.n_lambda != 0 && line.n_lambda < nmax;
    (line.passes ? rep.passing : rep.failing).push_back(v);
    rep.lines.push_back(std::move(line));
  }

  const std::vector<LabeledValue> k1 = all_values(cache.get(System::bbs(1), nmax));
  for (const LabeledValue& v : rep.passing) {
    if (!contains(k1, v.value, tol)) rep.passing_not_in_k1.push_back(v);
  }
  return rep;
}

}  // namespace bbs

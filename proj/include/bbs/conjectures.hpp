#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbs/spectrum.hpp"

namespace bbs {

// Report-only checkers for the observed relations between the multiple
// eigenvalues at capacity j and the spectrum of BBS translation (k = 1).

struct LabeledValue {
  std::string label;
  double value;
};

struct Conjecture1Report {
  unsigned j = 0;
  unsigned n = 0;
  unsigned k1_level = 0;                 // floor((n - 2) / j)
  std::vector<LabeledValue> observed;    // {1} U (multiple at n  ∩  multiple at n+1)
  std::vector<LabeledValue> expected;    // Sp(M_1^(k1_level))
  std::vector<LabeledValue> missing;     // expected but not observed
  std::vector<LabeledValue> extra;       // observed but not expected
  bool equal() const { return missing.empty() && extra.empty(); }
};

// Throws std::invalid_argument for j = 0 or n < 3; InfeasibleSize when level
// n + 1 exceeds the cache's dense cap.
Conjecture1Report conjecture1_check(unsigned j, unsigned n, SpectrumCache& cache);

struct MonotoneScanLine {
  std::string label;
  double value;
  std::vector<std::uint64_t> multiplicities;  // index n - 1 for n = 1..nmax
  unsigned first_appearance = 0;              // least n with positive multiplicity
  // Least n0 with m(n0) > 0 and m non-decreasing on n0..nmax; 0 if none.
  unsigned n_lambda = 0;
  bool monotone_from_first = false;
  // n_lambda exists and leaves at least two levels to compare.
  bool passes = false;
};

struct Conjecture2Report {
  unsigned j = 0;
  unsigned nmax = 0;
  std::vector<MonotoneScanLine> lines;       // every labeled value seen at some level
  std::vector<LabeledValue> passing;
  std::vector<LabeledValue> failing;         // flagged exceptions
  std::vector<LabeledValue> passing_not_in_k1;  // passing values absent from Sp(M_1^(nmax))
};

Conjecture2Report conjecture2_scan(unsigned j, unsigned nmax, SpectrumCache& cache);

}  // namespace bbs

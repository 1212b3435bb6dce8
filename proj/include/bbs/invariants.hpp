#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbs/spectrum.hpp"

namespace bbs {

struct InvariantOptions {
  std::optional<std::string> only;  // run a single named invariant
  unsigned n = 8;                   // largest level exercised
  bool corrupt = false;             // bump one entry of S before the stochasticity check
  unsigned random_trials = 200;
  SpectrumSettings settings;
};

struct InvariantResult {
  std::string name;
  bool passed;
  std::string detail;
};

// double-stochasticity, level-oracles, gram-identity, conjugacy, sigma,
// ergodicity, dynamics, spectrum-k1, trace-moments.
const std::vector<std::string>& invariant_names();

// Throws std::invalid_argument for an unknown `only` name.
std::vector<InvariantResult> run_invariants(const InvariantOptions& options);

}  // namespace bbs

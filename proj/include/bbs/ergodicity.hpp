#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bbs/spectrum.hpp"
#include "bbs/transition.hpp"

namespace bbs {

struct ErgodicityCertificate {
  bool verdict = false;
  // Smallest power with every entry of M^s0 positive (0 when none found).
  unsigned s0 = 0;
  // min entry of M^s0, as a decimal and as an exact fraction "num/den".
  double alpha = 0.0;
  std::string alpha_exact;
  // Powers examined before giving up: either smax, or the point where the
  // positivity pattern of S^s started repeating without becoming full.
  unsigned powers_examined = 0;
  bool pattern_cycle = false;

  struct SpectralReason {
    std::uint64_t one_multiplicity;
    bool has_minus_one;
  };
  std::optional<SpectralReason> spectral_reason;
};

// Searches s = 1..smax for an entrywise positive power of M. Positivity is
// decided on the exact 0/1 support of S^s; alpha comes from the exact
// big-integer power S^s0 / scale^s0. When the support pattern cycles without
// becoming full, the verdict is false for every s.
ErgodicityCertificate check_ergodic_power(const TransitionMatrix& t, unsigned smax);

// Fills spectral_reason from a report of the same operator.
void attach_spectral_reason(ErgodicityCertificate& cert, const SpectrumReport& report,
                            double tol = 1e-6);

// Support graph connected and not bipartite.
bool support_graph_ergodic(const TransitionMatrix& t);

// Power iteration of a point mass until successive iterates differ by less
// than tol in max norm. Throws NotErgodic for non-ergodic input and
// std::runtime_error if max_iterations is exhausted.
std::vector<double> stationary_distribution(const TransitionMatrix& t, double tol = 1e-12,
                                            std::size_t max_iterations = 10'000'000);

enum class BirkhoffShape {
  Mixed,      // arbitrary permutations
  Blocks,     // permutations preserving two halves: disconnected
  Bipartite,  // permutations exchanging even and odd indices: periodic
};

// Symmetric doubly stochastic matrix S / scale with S = sum_i w_i (P_i + P_i^T)
// for 1..max_terms random permutations P_i and integer weights 1..4.
TransitionMatrix random_birkhoff_mixture(std::mt19937_64& rng, std::size_t dim,
                                         BirkhoffShape shape, unsigned max_terms = 3);

}  // namespace bbs

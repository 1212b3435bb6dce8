#include "bbs/invariants.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bbs/automaton.hpp"
#include "bbs/dynamics.hpp"
#include "bbs/ergodicity.hpp"
#include "bbs/gasket.hpp"
#include "bbs/level_matrix.hpp"
#include "bbs/transition.hpp"

namespace bbs {

namespace {

using Check = std::function<InvariantResult(const InvariantOptions&)>;

InvariantResult ok(const std::string& name, const std::string& detail) {
  return {name, true, detail};
}
InvariantResult fail(const std::string& name, const std::string& detail) {
  return {name, false, detail};
}

InvariantResult double_stochasticity(const InvariantOptions& o) {
  const std::string name = "double-stochasticity";
  for (unsigned k = 1; k <= 5; ++k) {
    for (unsigned n = 0; n <= o.n; ++n) {
      TransitionMatrix t = build_transition(System::bbs(k), n);
      if (o.corrupt && k == 1 && n == o.n) {
        std::vector<Triplet> e(t.integer_part().entries().begin(), t.integer_part().entries().end());
        e.push_back({0, 0, 1});
        t = TransitionMatrix(t.system(), n, t.scale(), SparseIntMatrix(t.dim(), std::move(e)));
      }
      if (!check_double_stochastic(t)) {
        return fail(name, "row/column sums differ from the scale at k=" + std::to_string(k) +
                              " n=" + std::to_string(n));
      }
    }
  }
  if (!check_double_stochastic(build_transition(System::lamplighter(), o.n))) {
    return fail(name, "lamplighter at n=" + std::to_string(o.n));
  }
  return ok(name, "k=1..5 and lamplighter, n<=" + std::to_string(o.n));
}

InvariantResult level_oracles(const InvariantOptions& o) {
  const std::string name = "level-oracles";
  const unsigned top = std::min(o.n, 10u);
  std::vector<System> systems{System::lamplighter()};
  for (unsigned k = 1; k <= 5; ++k) systems.push_back(System::bbs(k));
  for (const System& sys : systems) {
    const MealyAutomaton a = build_automaton(sys);
    for (unsigned n = 0; n <= top; ++n) {
      const std::vector<LevelMatrix> rec = build_level(sys, n);
      for (StateId q = 0; q < rec.size(); ++q) {
        if (!(build_direct(a, q, n) == rec[q])) {
          return fail(name, sys.name() + " state " + std::to_string(q) + " n=" + std::to_string(n));
        }
        const bool formula = n >= 1 && (sys.kind == SystemKind::Lamplighter ||
                                        (sys.kind == SystemKind::Bbs && sys.capacity == 1));
        if (!formula) continue;
        for (std::uint64_t c = 0; c < rec[q].dim(); ++c) {
          for (std::uint64_t r = 0; r < rec[q].dim(); ++r) {
            if (entry_formula(sys.kind, q, r, c, n) != rec[q].at(r, c)) {
              return fail(name, sys.name() + " entry formula at n=" + std::to_string(n));
            }
          }
        }
      }
    }
  }
  return ok(name, "direct == recursive (== entry formula), n<=" + std::to_string(top));
}

InvariantResult gram_identity(const InvariantOptions& o) {
  const std::string name = "gram-identity";
  for (unsigned n = 0; n <= o.n; ++n) {
    const std::vector<LevelMatrix> a = build_level(System::bbs(1), n);
    const SparseIntMatrix a0 = a[0].to_sparse(), a1 = a[1].to_sparse();
    const SparseIntMatrix g = a0 * a0.transpose() + a1 * a1.transpose();
    if (!(g == SparseIntMatrix::identity(a[0].dim(), 2))) {
      return fail(name, "a0 a0^T + a1 a1^T != 2 I at n=" + std::to_string(n));
    }
  }
  return ok(name, "k=1, n<=" + std::to_string(o.n));
}

InvariantResult conjugacy(const InvariantOptions& o) {
  const std::string name = "conjugacy";
  for (unsigned n = 1; n <= o.n; ++n) {
    const ConjugacyResult r = verify_conjugacy(n);
    if (!r.passed()) {
      return fail(name, std::string(r.level_identity ? "operator" : "level") +
                            " identity fails at n=" + std::to_string(n));
    }
  }
  return ok(name, "n=1.." + std::to_string(o.n));
}

InvariantResult sigma_invariants(const InvariantOptions& o) {
  const std::string name = "sigma";
  for (unsigned n = 1; n <= o.n; ++n) {
    const GasketPermutation s = sigma(n);  // throws on involution/pair-law failure
    for (std::uint64_t k = 0; k < s.image.size(); ++k) {
      if (sigma_closed(n, k) != s.image[k]) {
        return fail(name, "closed form disagrees at n=" + std::to_string(n));
      }
    }
    if (n >= 2 && nu(n) != nu_closed(n)) return fail(name, "nu forms disagree at n=" + std::to_string(n));
  }
  for (unsigned n = 1; n <= 64; ++n) {
    if (gasket_row(n) != gasket_row_lucas(n)) return fail(name, "gasket row " + std::to_string(n));
  }
  return ok(name, "n<=" + std::to_string(o.n) + ", gasket rows n<=64");
}

InvariantResult ergodicity(const InvariantOptions& o) {
  const std::string name = "ergodicity";
  const unsigned top = std::min(o.n, 8u);
  for (const System& sys : {System::bbs(1), System::lamplighter()}) {
    for (unsigned n = 1; n <= top; ++n) {
      const TransitionMatrix t = build_transition(sys, n);
      const bool spectral = check_ergodic_spectral(numeric_spectrum(t, o.settings));
      const unsigned long dim = t.dim();
      const bool power = check_ergodic_power(t, static_cast<unsigned>((dim - 1) * (dim - 1) + 1)).verdict;
      if (!spectral || !power) {
        return fail(name, sys.name() + " n=" + std::to_string(n) + " not ergodic");
      }
    }
  }
  std::mt19937_64 rng(20240611);
  const BirkhoffShape shapes[] = {BirkhoffShape::Mixed, BirkhoffShape::Blocks,
                                  BirkhoffShape::Bipartite};
  for (unsigned trial = 0; trial < std::min(o.random_trials, 100u); ++trial) {
    const TransitionMatrix t = random_birkhoff_mixture(rng, 16, shapes[trial % 3]);
    const bool spectral = check_ergodic_spectral(numeric_spectrum(t, o.settings));
    const bool power = check_ergodic_power(t, 15 * 15 + 1).verdict;
    if (spectral != power) return fail(name, "criteria disagree on random matrix " + std::to_string(trial));
  }
  return ok(name, "k=1 and lamplighter n<=" + std::to_string(top) + ", random 16x16 mixtures");
}

InvariantResult dynamics(const InvariantOptions& o) {
  const std::string name = "dynamics";
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(0, 64), bit(0, 1);
  const std::vector<Capacity> caps{Capacity::finite(1), Capacity::finite(2), Capacity::finite(3),
                                   Capacity::finite(5), Capacity::infinite()};
  for (const Capacity& cap : caps) {
    for (unsigned trial = 0; trial < o.random_trials; ++trial) {
      BallConfiguration c;
      c.bits.resize(static_cast<std::size_t>(len(rng)));
      for (auto& b : c.bits) b = static_cast<std::uint8_t>(bit(rng));
      const BallConfiguration carrier = evolve_carrier(c, cap, 0).config;
      if (cap.is_infinite()) {
        if (carrier != evolve_udkdv(c)) return fail(name, "carrier vs udKdV, capacity inf");
        continue;
      }
      if (carrier != evolve_udkdv_capacity(c, cap.value())) {
        return fail(name, "carrier vs capacity udKdV, k=" + cap.str());
      }
      const Word w = act(build_bbs(cap.value()), 0, Word::parse(c.str()));
      if (w.str() != carrier.str()) return fail(name, "carrier vs automaton, k=" + cap.str());
    }
  }
  return ok(name, std::to_string(o.random_trials) + " configurations per capacity");
}

InvariantResult spectrum_k1(const InvariantOptions& o) {
  const std::string name = "spectrum-k1";
  const unsigned top = std::min(o.n, o.settings.max_dense_level);
  for (unsigned n = 1; n <= top; ++n) {
    const SpectrumReport exact = exact_spectrum_k1(n);
    const SpectrumReport numeric = numeric_spectrum(build_transition(System::bbs(1), n), o.settings);
    if (!same_multiplicity_map(exact, numeric, 1e-9)) {
      return fail(name, "closed form and eigensolver disagree at n=" + std::to_string(n));
    }
  }
  return ok(name, "n<=" + std::to_string(top));
}

InvariantResult trace_moments_check(const InvariantOptions& o) {
  const std::string name = "trace-moments";
  const unsigned top = std::min(o.n, o.settings.max_dense_level);
  for (unsigned k = 1; k <= 5; ++k) {
    for (unsigned n = 1; n <= top; ++n) {
      const TransitionMatrix t = build_transition(System::bbs(k), n);
      if (!verify_trace_moments(t, numeric_spectrum(t, o.settings), 8)) {
        return fail(name, "k=" + std::to_string(k) + " n=" + std::to_string(n));
      }
    }
  }
  return ok(name, "k=1..5, n<=" + std::to_string(top) + ", m<=8");
}

const std::vector<std::pair<std::string, Check>>& registry() {
  static const std::vector<std::pair<std::string, Check>> checks{
      {"double-stochasticity", double_stochasticity},
      {"level-oracles", level_oracles},
      {"gram-identity", gram_identity},
      {"conjugacy", conjugacy},
      {"sigma", sigma_invariants},
      {"ergodicity", ergodicity},
      {"dynamics", dynamics},
      {"spectrum-k1", spectrum_k1},
      {"trace-moments", trace_moments_check},
  };
  return checks;
}

}  // namespace

const std::vector<std::string>& invariant_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, check] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<InvariantResult> run_invariants(const InvariantOptions& options) {
  if (options.only) {
    const auto& names = invariant_names();
    if (std::find(names.begin(), names.end(), *options.only) == names.end()) {
      throw std::invalid_argument("unknown invariant '" + *options.only + "'");
    }
  }
  std::vector<InvariantResult> results;
  for (const auto& [name, check] : registry()) {
    if (options.only && *options.only != name) continue;
    try {
      results.push_back(check(options));
    } catch (const std::logic_error& e) {
      results.push_back({name, false, e.what()});
    }
  }
  return results;
}

}  // namespace bbs

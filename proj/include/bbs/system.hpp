#pragma once

#include <cstdint>
#include <string>

namespace bbs {

enum class SystemKind { Bbs, Lamplighter, Custom };

// Which automaton a level matrix or transition operator came from.
// For BBS the capacity is the carrier capacity k (k+1 states); the
// lamplighter always has two states.
struct System {
  SystemKind kind = SystemKind::Bbs;
  unsigned capacity = 1;

  static System bbs(unsigned k);
  static System lamplighter() { return {SystemKind::Lamplighter, 1}; }
  static System custom() { return {SystemKind::Custom, 0}; }

  unsigned state_count() const { return kind == SystemKind::Bbs ? capacity + 1 : 2; }
  // Normalisation of the transition operator: 2 * (number of states).
  std::int64_t scale() const { return 2 * static_cast<std::int64_t>(state_count()); }
  std::string name() const;

  bool operator==(const System&) const = default;
};

}  // namespace bbs

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbs/system.hpp"

namespace bbs {

using Symbol = std::uint8_t;
using StateId = std::uint32_t;

// A finite binary word. bits[0] is the first-consumed symbol and the most
// significant digit of index(): index = sum_j bits[j] * 2^(n-1-j).
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> bits);

  static Word parse(std::string_view text);
  static Word from_index(std::uint64_t index, unsigned length);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  Symbol operator[](std::size_t i) const { return bits_[i]; }
  std::span<const Symbol> bits() const { return bits_; }

  std::uint64_t index() const;
  std::string str() const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<Symbol> bits_;
};

// Mealy automaton over the alphabet {0,1} with total transition and output
// tables: next(q, s) and output(q, s).
class MealyAutomaton {
 public:
  struct Edge {
    StateId next;
    Symbol output;
  };

  MealyAutomaton(System system, std::vector<std::array<Edge, 2>> table);

  const System& system() const { return system_; }
  std::size_t state_count() const { return table_.size(); }
  StateId next(StateId q, Symbol s) const { return table_.at(q)[s].next; }
  Symbol output(StateId q, Symbol s) const { return table_.at(q)[s].output; }

  // True when output(q, .) is a permutation of {0,1} for every state.
  bool is_invertible() const;

  // Lines of the form "q_i --in|out--> q_j", one per (state, symbol).
  std::string edge_list() const;

 private:
  System system_;
  std::vector<std::array<Edge, 2>> table_;
};

MealyAutomaton build_lamplighter();

// Carrier of capacity k; state q_i means the carrier holds i balls.
// Throws std::invalid_argument for k == 0.
MealyAutomaton build_bbs(unsigned k);

MealyAutomaton build_automaton(const System& system);

Word act(const MealyAutomaton& automaton, StateId start, const Word& w);

// Applies the states in the given order: states[0] acts first.
Word act_composed(const MealyAutomaton& automaton, std::span<const StateId> states,
                  const Word& w);

// Index-level action on length-n words; avoids materialising Word objects.
std::uint64_t act_index(const MealyAutomaton& automaton, StateId start,
                        std::uint64_t index, unsigned length);

}  // namespace bbs

#include "bbs/automaton.hpp"

#include <sstream>
#include <stdexcept>

namespace bbs {

System System::bbs(unsigned k) {
  if (k == 0) throw std::invalid_argument("BBS carrier capacity must be at least 1");
  return {SystemKind::Bbs, k};
}

std::string System::name() const {
  switch (kind) {
    case SystemKind::Bbs: return "bbs";
    case SystemKind::Lamplighter: return "lamplighter";
    case SystemKind::Custom: return "custom";
  }
  return "unknown";
}

Word::Word(std::vector<Symbol> bits) : bits_(std::move(bits)) {
  for (Symbol b : bits_) {
    if (b > 1) throw std::invalid_argument("word symbols must be 0 or 1");
  }
}

Word Word::parse(std::string_view text) {
  std::vector<Symbol> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("word text must contain only '0' and '1'");
    }
    bits.push_back(static_cast<Symbol>(c - '0'));
  }
  return Word(std::move(bits));
}

Word Word::from_index(std::uint64_t index, unsigned length) {
  if (length < 64 && (index >> length) != 0) {
    throw std::invalid_argument("index does not fit in the requested length");
  }
  std::vector<Symbol> bits(length);
  for (unsigned j = 0; j < length; ++j) {
    bits[j] = static_cast<Symbol>((index >> (length - 1 - j)) & 1u);
  }
  return Word(std::move(bits));
}

std::uint64_t Word::index() const {
  if (bits_.size() > 63) throw std::overflow_error("word too long for a 64-bit index");
  std::uint64_t idx = 0;
  for (Symbol b : bits_) idx = (idx << 1) | b;
  return idx;
}

std::string Word::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (Symbol b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

MealyAutomaton::MealyAutomaton(System system, std::vector<std::array<Edge, 2>> table)
    : system_(system), table_(std::move(table)) {
  if (table_.empty()) throw std::invalid_argument("automaton needs at least one state");
  for (const auto& row : table_) {
    for (const Edge& e : row) {
      if (e.next >= table_.size() || e.output > 1) {
        throw std::invalid_argument("automaton table is not total over its states");
      }
    }
  }
}

bool MealyAutomaton::is_invertible() const {
  for (const auto& row : table_) {
    if (row[0].output == row[1].output) return false;
  }
  return true;
}

std::string MealyAutomaton::edge_list() const {
  std::ostringstream out;
  for (std::size_t q = 0; q < table_.size(); ++q) {
    for (int s = 0; s < 2; ++s) {
      out << "q_" << q << " --" << s << '|' << int(table_[q][s].output) << "--> q_"
          << table_[q][s].next << '\n';
    }
  }
  return out.str();
}

MealyAutomaton build_lamplighter() {
  // next(q, s) = q_s; q_0 flips the symbol, q_1 copies it.
  return MealyAutomaton(System::lamplighter(), {{
                                                   {{{0, 1}, {1, 0}}},
                                                   {{{0, 0}, {1, 1}}},
                                               }});
}

MealyAutomaton build_bbs(unsigned k) {
  const System system = System::bbs(k);
  std::vector<std::array<MealyAutomaton::Edge, 2>> table(k + 1);
  for (StateId i = 0; i <= k; ++i) {
    // Empty box: drop a ball if the carrier holds one.
    table[i][0] = i > 0 ? MealyAutomaton::Edge{i - 1, 1} : MealyAutomaton::Edge{0, 0};
    // Full box: pick the ball up unless the carrier is full.
    table[i][1] = i < k ? MealyAutomaton::Edge{i + 1, 0} : MealyAutomaton::Edge{i, 1};
  }
  return MealyAutomaton(system, std::move(table));
}

MealyAutomaton build_automaton(const System& system) {
  switch (system.kind) {
    case SystemKind::Bbs: return build_bbs(system.capacity);
    case SystemKind::Lamplighter: return build_lamplighter();
    case SystemKind::Custom: break;
  }
  throw std::invalid_argument("custom systems carry no automaton");
}

Word act(const MealyAutomaton& automaton, StateId start, const Word& w) {
  if (start >= automaton.state_count()) throw std::out_of_range("no such state");
  std::vector<Symbol> out(w.size());
  StateId q = start;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = automaton.output(q, w[i]);
    q = automaton.next(q, w[i]);
  }
  return Word(std::move(out));
}

Word act_composed(const MealyAutomaton& automaton, std::span<const StateId> states,
                  const Word& w) {
  Word current = w;
  for (StateId q : states) current = act(automaton, q, current);
  return current;
}

std::uint64_t act_index(const MealyAutomaton& automaton, StateId start,
                        std::uint64_t index, unsigned length) {
  if (start >= automaton.state_count()) throw std::out_of_range("no such state");
  std::uint64_t out = 0;
  StateId q = start;
  for (unsigned j = 0; j < length; ++j) {
    const auto s = static_cast<Symbol>((index >> (length - 1 - j)) & 1u);
    out = (out << 1) | automaton.output(q, s);
    q = automaton.next(q, s);
  }
  return out;
}

}  // namespace bbs

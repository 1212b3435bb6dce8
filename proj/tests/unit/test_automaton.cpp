#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbs/automaton.hpp"

using namespace bbs;

namespace {

// Carrier oracle straight from the rule: pick up while there is room,
// drop into every empty box while loaded.
std::string carrier(const std::string& in, unsigned cap, unsigned load) {
  std::string out;
  for (char c : in) {
    if (c == '1') {
      if (load < cap) {
        ++load;
        out += '0';
      } else {
        out += '1';
      }
    } else if (load > 0) {
      --load;
      out += '1';
    } else {
      out += '0';
    }
  }
  return out;
}

// Lamplighter by its output table: q_s after reading s.
std::string lamplighter(const std::string& in, unsigned q) {
  std::string out;
  for (char c : in) {
    const unsigned s = c - '0';
    out += (q == 0 ? (s ^ 1u) : s) ? '1' : '0';
    q = s;
  }
  return out;
}

std::string random_word(std::mt19937_64& rng, std::size_t n) {
  std::string s(n, '0');
  for (auto& c : s) c = (rng() & 1) ? '1' : '0';
  return s;
}

std::string act_str(const MealyAutomaton& a, StateId q, const std::string& w) {
  return act(a, q, Word::parse(w)).str();
}

}  // namespace

TEST_CASE("word index puts the first symbol in the top bit") {
  CHECK(Word::parse("100").index() == 4);
  CHECK(Word::parse("001").index() == 1);
  CHECK(Word::parse("").index() == 0);
  CHECK(Word::from_index(6, 4).str() == "0110");
  for (std::uint64_t i = 0; i < 32; ++i) CHECK(Word::from_index(i, 5).index() == i);
  CHECK_THROWS(Word::parse("012"));
}

TEST_CASE("lamplighter examples") {
  const MealyAutomaton a = build_lamplighter();
  CHECK(a.state_count() == 2);
  CHECK(a.is_invertible());
  CHECK(act_str(a, 0, "0011101100000") == "1101100101111");
  CHECK(act_str(a, 1, "0011101100000") == "0101100101111");
  CHECK(act_str(a, 1, "") == "");
  CHECK(act_str(a, 0, "00") == "11");
  for (StateId q = 0; q < 2; ++q) {
    for (Symbol s = 0; s < 2; ++s) CHECK(a.next(q, s) == s);
  }
}

TEST_CASE("bbs examples") {
  CHECK(act_str(build_bbs(1), 0, "0011101100000") == "0001110110000");
  CHECK(act_str(build_bbs(2), 0, "0011101100000") == "0000110111000");
  CHECK(act_str(build_bbs(2), 2, "0011101100000") == "1100110111000");
  CHECK(act_str(build_bbs(1), 0, "11") == "01");
  CHECK(build_bbs(3).state_count() == 4);
  CHECK_THROWS_AS(build_bbs(0), std::invalid_argument);
  CHECK(build_bbs(1).edge_list().find("q_0 --1|0--> q_1") != std::string::npos);
}

TEST_CASE("composition applies the first listed state first") {
  const MealyAutomaton b = build_bbs(1);
  const std::vector<StateId> twice{0, 0};
  CHECK(act_composed(b, twice, Word::parse("1000")).str() == "0010");
  CHECK(act_composed(b, std::vector<StateId>{}, Word::parse("1011")).str() == "1011");

  const MealyAutomaton l = build_lamplighter();
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const std::string w = random_word(rng, 12);
    const std::vector<StateId> seq{1, 0, 1};
    CHECK(act_composed(l, seq, Word::parse(w)).str() ==
          lamplighter(lamplighter(lamplighter(w, 1), 0), 1));
  }
}

TEST_CASE("automaton action agrees with the carrier and table oracles") {
  std::mt19937_64 rng(42);
  for (unsigned k = 1; k <= 5; ++k) {
    const MealyAutomaton a = build_bbs(k);
    for (int t = 0; t < 200; ++t) {
      const std::string w = random_word(rng, rng() % 40);
      const unsigned q = static_cast<unsigned>(rng() % (k + 1));
      CHECK(act_str(a, q, w) == carrier(w, k, q));
    }
  }
  const MealyAutomaton l = build_lamplighter();
  for (int t = 0; t < 200; ++t) {
    const std::string w = random_word(rng, rng() % 40);
    CHECK(act_str(l, 0, w) == lamplighter(w, 0));
    CHECK(act_str(l, 1, w) == lamplighter(w, 1));
  }
}

TEST_CASE("prefix property") {
  std::mt19937_64 rng(3);
  for (const MealyAutomaton& a : {build_lamplighter(), build_bbs(1), build_bbs(2), build_bbs(4)}) {
    for (int t = 0; t < 100; ++t) {
      const std::string v = random_word(rng, 30);
      const std::size_t cut = rng() % 31;
      const StateId q = static_cast<StateId>(rng() % a.state_count());
      CHECK(act_str(a, q, v).substr(0, cut) == act_str(a, q, v.substr(0, cut)));
    }
  }
}

TEST_CASE("lamplighter is bijective and bbs is not surjective on each level") {
  const MealyAutomaton l = build_lamplighter();
  for (unsigned n = 0; n <= 10; ++n) {
    for (StateId q = 0; q < 2; ++q) {
      std::set<std::uint64_t> images;
      for (std::uint64_t i = 0; i < (1u << n); ++i) images.insert(act_index(l, q, i, n));
      CHECK(images.size() == (1u << n));
    }
  }
  for (unsigned k : {1u, 2u, 3u}) {
    const MealyAutomaton b = build_bbs(k);
    for (unsigned n = 2; n <= 10; ++n) {
      std::set<std::uint64_t> images;
      for (std::uint64_t i = 0; i < (1u << n); ++i) images.insert(act_index(b, 0, i, n));
      CHECK(images.size() < (1u << n));
    }
  }
  // "10" has no preimage under translation from q_0.
  const MealyAutomaton b1 = build_bbs(1);
  for (std::uint64_t i = 0; i < 4; ++i) CHECK(act_index(b1, 0, i, 2) != 2);
}

TEST_CASE("act_index matches act on words") {
  std::mt19937_64 rng(5);
  const MealyAutomaton a = build_bbs(3);
  for (int t = 0; t < 100; ++t) {
    const unsigned n = static_cast<unsigned>(rng() % 20);
    const std::uint64_t i = n == 0 ? 0 : rng() % (std::uint64_t{1} << n);
    const StateId q = static_cast<StateId>(rng() % 4);
    CHECK(act_index(a, q, i, n) == act(a, q, Word::from_index(i, n)).index());
  }
}

#include <doctest.h>

#include "bbs/invariants.hpp"

using namespace bbs;

TEST_CASE("full suite passes at small sizes") {
  InvariantOptions o;
  o.n = 6;
  o.random_trials = 50;
  const auto results = run_invariants(o);
  CHECK(results.size() == invariant_names().size());
  for (const auto& r : results) CHECK_MESSAGE(r.passed, r.name << ": " << r.detail);
}

TEST_CASE("corruption is detected and named") {
  InvariantOptions o;
  o.n = 4;
  o.corrupt = true;
  o.only = "double-stochasticity";
  const auto results = run_invariants(o);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].passed);
  CHECK(results[0].name == "double-stochasticity");
}

TEST_CASE("unknown invariant") {
  InvariantOptions o;
  o.only = "nope";
  CHECK_THROWS_AS(run_invariants(o), std::invalid_argument);
}

#include <doctest.h>

#include <vector>

#include "bbs/transition.hpp"

using namespace bbs;

namespace {

// trace(S^m) by dense integer powers.
std::vector<std::int64_t> dense_traces(const TransitionMatrix& t, unsigned mmax) {
  const std::size_t n = t.dim();
  std::vector<std::int64_t> s(n * n, 0), p(n * n, 0), q(n * n);
  for (const Triplet& e : t.integer_part().entries()) s[e.row * n + e.col] = e.value;
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1;
  std::vector<std::int64_t> out;
  for (unsigned m = 0; m <= mmax; ++m) {
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += p[i * n + i];
    out.push_back(tr);
    std::fill(q.begin(), q.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) q[i * n + j] += p[i * n + k] * s[k * n + j];
    std::swap(p, q);
  }
  return out;
}

}  // namespace

TEST_CASE("small operators") {
  const TransitionMatrix t1 = build_transition(System::bbs(1), 1);
  CHECK(t1.scale() == 4);
  for (std::uint64_t r = 0; r < 2; ++r)
    for (std::uint64_t c = 0; c < 2; ++c) CHECK(t1.integer_part().at(r, c) == 2);

  const TransitionMatrix t2 = build_transition(System::bbs(1), 2);
  CHECK(t2.integer_part().diagonal() == std::vector<std::int64_t>{2, 0, 0, 2});
  const std::int64_t expected[4][4] = {{2, 1, 1, 0}, {1, 0, 2, 1}, {1, 2, 0, 1}, {0, 1, 1, 2}};
  for (std::uint64_t r = 0; r < 4; ++r)
    for (std::uint64_t c = 0; c < 4; ++c) CHECK(t2.integer_part().at(r, c) == expected[r][c]);

  CHECK(build_transition(System::lamplighter(), 2).integer_part().diagonal() ==
        std::vector<std::int64_t>{0, 0, 2, 2});
  CHECK(build_transition(System::lamplighter(), 3).scale() == 4);
  CHECK(build_transition(System::bbs(3), 3).scale() == 8);
}

TEST_CASE("double stochasticity") {
  for (unsigned k = 1; k <= 5; ++k) {
    for (unsigned n = 0; n <= 10; ++n) {
      const TransitionMatrix t = build_transition(System::bbs(k), n);
      CHECK(check_double_stochastic(t));
      CHECK(t.integer_part().is_symmetric());
    }
  }
  const TransitionMatrix t0 = build_transition(System::bbs(2), 0);
  CHECK(t0.integer_part().at(0, 0) == 6);

  // One bumped diagonal entry stays symmetric but breaks the sums.
  const TransitionMatrix t = build_transition(System::bbs(2), 4);
  std::vector<Triplet> e(t.integer_part().entries().begin(), t.integer_part().entries().end());
  e.push_back({5, 5, 1});
  CHECK_FALSE(check_double_stochastic(
      TransitionMatrix(t.system(), 4, t.scale(), SparseIntMatrix(t.dim(), std::move(e)))));
}

TEST_CASE("constructor rejects asymmetric or negative matrices") {
  CHECK_THROWS_AS(TransitionMatrix(System::custom(), 1, 2, SparseIntMatrix(2, {{0, 1, 1}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(TransitionMatrix(System::custom(), 1, 2,
                                   SparseIntMatrix(2, {{0, 1, -1}, {1, 0, -1}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(TransitionMatrix(System::custom(), 1, 0, SparseIntMatrix(2, {})),
                  std::invalid_argument);
}

TEST_CASE("exact trace moments") {
  const auto tr = trace_moments(build_transition(System::bbs(1), 2), 2);
  CHECK(tr == std::vector<std::int64_t>{4, 4, 24});
  for (unsigned k : {1u, 2u, 4u}) {
    for (unsigned n : {0u, 1u, 3u, 5u}) {
      const TransitionMatrix t = build_transition(System::bbs(k), n);
      CHECK(trace_moments(t, 8) == dense_traces(t, 8));
    }
  }
  const TransitionMatrix l = build_transition(System::lamplighter(), 4);
  CHECK(trace_moments(l, 8) == dense_traces(l, 8));
}

#include "bbs/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "bbs/errors.hpp"

namespace bbs {

namespace {

using boost::multiprecision::cpp_int;

// Row-major N x N bit matrix.
struct BitMatrix {
  std::size_t n;
  std::size_t words;
  std::vector<std::uint64_t> bits;

  explicit BitMatrix(std::size_t dim) : n(dim), words((dim + 63) / 64), bits(dim * words, 0) {}
  std::uint64_t* row(std::size_t r) { return bits.data() + r * words; }
  const std::uint64_t* row(std::size_t r) const { return bits.data() + r * words; }
  void set(std::size_t r, std::size_t c) { row(r)[c / 64] |= std::uint64_t{1} << (c % 64); }
  bool get(std::size_t r, std::size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1u; }
  bool full() const {
    const std::size_t tail = n % 64;
    const std::uint64_t last = tail == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << tail) - 1;
    for (std::size_t r = 0; r < n; ++r) {
      const std::uint64_t* p = row(r);
      for (std::size_t w = 0; w + 1 < words; ++w) {
        if (p[w] != ~std::uint64_t{0}) return false;
      }
      if (p[words - 1] != last) return false;
    }
    return true;
  }
};

BitMatrix support_of(const TransitionMatrix& t) {
  BitMatrix b(static_cast<std::size_t>(t.dim()));
  for (const Triplet& e : t.integer_part().entries()) b.set(e.row, e.col);
  return b;
}

// pattern(B S): row r is the union of the rows of S selected by row r of B.
BitMatrix times_support(const BitMatrix& b, const BitMatrix& s) {
  BitMatrix out(b.n);
  for (std::size_t r = 0; r < b.n; ++r) {
    std::uint64_t* dst = out.row(r);
    for (std::size_t j = 0; j < b.n; ++j) {
      if (!b.get(r, j)) continue;
      const std::uint64_t* src = s.row(j);
      for (std::size_t w = 0; w < b.words; ++w) dst[w] |= src[w];
    }
  }
  return out;
}

std::string pattern_key(const BitMatrix& b) {
  return std::string(reinterpret_cast<const char*>(b.bits.data()),
                     b.bits.size() * sizeof(std::uint64_t));
}

}  // namespace

ErgodicityCertificate check_ergodic_power(const TransitionMatrix& t, unsigned smax) {
  if (smax == 0) throw std::invalid_argument("smax must be at least 1");
  ErgodicityCertificate cert;
  const BitMatrix s_pattern = support_of(t);
  BitMatrix power = s_pattern;
  std::unordered_set<std::string> seen;
  for (unsigned s = 1; s <= smax; ++s) {
    cert.powers_examined = s;
    if (power.full()) {
      cert.verdict = true;
      cert.s0 = s;
      break;
    }
    if (!seen.insert(pattern_key(power)).second) {
      cert.pattern_cycle = true;
      return cert;
    }
    power = times_support(power, s_pattern);
  }
  if (!cert.verdict) return cert;

  // Exact S^s0 by repeated sparse right-multiplication.
  const std::size_t n = static_cast<std::size_t>(t.dim());
  std::vector<cpp_int> cur(n * n, 0), next(n * n);
  for (std::size_t i = 0; i < n; ++i) cur[i * n + i] = 1;
  for (unsigned step = 0; step < cert.s0; ++step) {
    std::fill(next.begin(), next.end(), cpp_int(0));
    for (const Triplet& e : t.integer_part().entries()) {
      for (std::size_t r = 0; r < n; ++r) {
        const cpp_int& x = cur[r * n + e.row];
        if (!x.is_zero()) next[r * n + e.col] += x * e.value;
      }
    }
    std::swap(cur, next);
  }
  const cpp_int min_entry = *std::min_element(cur.begin(), cur.end());
  cpp_int denom = 1;
  for (unsigned step = 0; step < cert.s0; ++step) denom *= t.scale();
  const cpp_int g = boost::multiprecision::gcd(min_entry, denom);
  const cpp_int num = min_entry / g;
  const cpp_int den = denom / g;
  cert.alpha_exact = num.str() + "/" + den.str();
  cert.alpha = static_cast<double>(boost::multiprecision::cpp_rational(min_entry, denom));
  return cert;
}

void attach_spectral_reason(ErgodicityCertificate& cert, const SpectrumReport& report,
                            double tol) {
  cert.spectral_reason = ErgodicityCertificate::SpectralReason{
      report.multiplicity_at(1.0, tol), report.multiplicity_at(-1.0, tol) > 0};
}

bool support_graph_ergodic(const TransitionMatrix& t) {
  const std::size_t n = static_cast<std::size_t>(t.dim());
  if (n == 0) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Triplet& e : t.integer_part().entries()) adj[e.row].push_back(e.col);
  std::vector<int> colour(n, -1);
  bool odd_cycle = false;
  std::queue<std::size_t> frontier;
  colour[0] = 0;
  frontier.push(0);
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    for (std::size_t u : adj[v]) {
      if (colour[u] < 0) {
        colour[u] = 1 - colour[v];
        ++reached;
        frontier.push(u);
      } else if (colour[u] == colour[v]) {
        odd_cycle = true;
      }
    }
  }
  return reached == n && odd_cycle;
}

std::vector<double> stationary_distribution(const TransitionMatrix& t, double tol,
                                            std::size_t max_iterations) {
  if (!support_graph_ergodic(t)) {
    throw NotErgodic("transition operator is not ergodic (support graph disconnected or bipartite)");
  }
  const std::size_t n = static_cast<std::size_t>(t.dim());
  std::vector<double> pi(n, 0.0), next(n, 0.0);
  pi[0] = 1.0;
  const double inv = 1.0 / static_cast<double>(t.scale());
  for (std::size_t it = 0; it < max_iterations; ++it) {
    // pi M; M is symmetric so this is M pi.
    t.integer_part().multiply<double>(pi, next);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] *= inv;
      diff = std::max(diff, std::fabs(next[i] - pi[i]));
    }
    std::swap(pi, next);
    if (diff < tol) return pi;
  }
  throw std::runtime_error("stationary distribution did not converge");
}

TransitionMatrix random_birkhoff_mixture(std::mt19937_64& rng, std::size_t dim,
                                         BirkhoffShape shape, unsigned max_terms) {
  if (dim < 2 || dim % 2 != 0) throw std::invalid_argument("dimension must be even and >= 2");
  std::uniform_int_distribution<unsigned> term_count(1, std::max(1u, max_terms));
  std::uniform_int_distribution<std::int64_t> weight(1, 4);
  const std::size_t half = dim / 2;

  std::vector<Triplet> e;
  std::int64_t total = 0;
  const unsigned terms = term_count(rng);
  for (unsigned i = 0; i < terms; ++i) {
    std::vector<std::uint64_t> perm(dim);
    switch (shape) {
      case BirkhoffShape::Mixed:
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        break;
      case BirkhoffShape::Blocks: {
        std::vector<std::uint64_t> lo(half), hi(half);
        std::iota(lo.begin(), lo.end(), 0);
        std::iota(hi.begin(), hi.end(), half);
        std::shuffle(lo.begin(), lo.end(), rng);
        std::shuffle(hi.begin(), hi.end(), rng);
        for (std::size_t j = 0; j < half; ++j) {
          perm[j] = lo[j];
          perm[half + j] = hi[j];
        }
        break;
      }
      case BirkhoffShape::Bipartite: {
        std::vector<std::uint64_t> evens(half), odds(half);
        for (std::size_t j = 0; j < half; ++j) {
          evens[j] = 2 * j;
          odds[j] = 2 * j + 1;
        }
        std::shuffle(evens.begin(), evens.end(), rng);
        std::shuffle(odds.begin(), odds.end(), rng);
        for (std::size_t j = 0; j < half; ++j) {
          perm[2 * j] = odds[j];
          perm[2 * j + 1] = evens[j];
        }
        break;
      }
    }
    const std::int64_t w = weight(rng);
    total += w;
    for (std::uint64_t c = 0; c < dim; ++c) {
      e.push_back({perm[c], c, w});
      e.push_back({c, perm[c], w});
    }
  }
  unsigned level = 0;
  while ((std::size_t{1} << level) < dim) ++level;
  return TransitionMatrix(System::custom(), level, 2 * total, SparseIntMatrix(dim, std::move(e)));
}

}  // namespace bbs

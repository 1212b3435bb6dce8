#include "bbs/exact_audit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bbs/errors.hpp"

namespace bbs {

namespace {

constexpr std::uint64_t kPrimes[] = {2147483647ULL, 2147483629ULL};

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Exact division by a monic polynomial.
IntPolynomial divide_monic(IntPolynomial num, const IntPolynomial& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() <= dn) throw std::logic_error("polynomial division degree mismatch");
  IntPolynomial q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const std::int64_t c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw std::logic_error("polynomial division left a remainder");
  }
  return q;
}

std::uint64_t reduce(std::int64_t x, std::uint64_t p) {
  const std::int64_t r = x % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

std::uint64_t nullity_mod(const TransitionMatrix& t, const IntPolynomial& poly, std::uint64_t p) {
  const std::size_t n = static_cast<std::size_t>(t.dim());
  // Horner: B <- B S + c_i I, B dense row-major mod p.
  std::vector<std::uint64_t> b(n * n, 0), next(n * n);
  const std::uint64_t lead = reduce(poly.back(), p);
  for (std::size_t i = 0; i < n; ++i) b[i * n + i] = lead;
  for (std::size_t deg = poly.size() - 1; deg-- > 0;) {
    std::fill(next.begin(), next.end(), 0);
    for (const Triplet& e : t.integer_part().entries()) {
      const std::uint64_t v = reduce(e.value, p);
      for (std::size_t r = 0; r < n; ++r) {
        std::uint64_t& dst = next[r * n + e.col];
        dst = (dst + b[r * n + e.row] * v) % p;
      }
    }
    const std::uint64_t c = reduce(poly[deg], p);
    for (std::size_t i = 0; i < n; ++i) next[i * n + i] = (next[i * n + i] + c) % p;
    std::swap(b, next);
  }

  auto power = [p](std::uint64_t x, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && b[pivot * n + col] == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != rank) {
      std::swap_ranges(b.begin() + pivot * n, b.begin() + pivot * n + n, b.begin() + rank * n);
    }
    const std::uint64_t inv = power(b[rank * n + col], p - 2);
    std::uint64_t* prow = b.data() + rank * n;
    for (std::size_t c = col; c < n; ++c) prow[c] = prow[c] * inv % p;
    for (std::size_t r = rank + 1; r < n; ++r) {
      std::uint64_t* row = b.data() + r * n;
      const std::uint64_t f = row[col];
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c) row[c] = (row[c] + (p - f) * prow[c]) % p;
    }
    ++rank;
  }
  return n - rank;
}

std::string rational_label(std::int64_t num, std::int64_t den) {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace

IntPolynomial cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw std::invalid_argument("cyclotomic index must be positive");
  IntPolynomial num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d == 0) num = divide_monic(num, cyclotomic_polynomial(d));
  }
  return num;
}

IntPolynomial cos_minimal_polynomial(unsigned m) {
  if (m == 1) return {-2, 1};
  if (m == 2) return {2, 1};
  // Phi_m(z) = z^h Psi(z + 1/z) with h = deg(Phi_m)/2; expand the palindromic
  // coefficients in D_i(x) = z^i + z^-i, D_{i+1} = x D_i - D_{i-1}.
  const IntPolynomial phi = cyclotomic_polynomial(m);
  const std::size_t h = (phi.size() - 1) / 2;
  IntPolynomial psi(h + 1, 0);
  psi[0] = phi[h];
  IntPolynomial prev{2}, cur{0, 1};
  for (std::size_t i = 1; i <= h; ++i) {
    const std::int64_t c = phi[h + i];
    for (std::size_t j = 0; j < cur.size(); ++j) psi[j] += c * cur[j];
    IntPolynomial next = multiply(cur, {0, 1});
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return psi;
}

unsigned cos_class_modulus(int p, int q) {
  if (q <= 0 || p < 0) throw std::invalid_argument("cos class needs p >= 0, q > 0");
  // cos(p pi/q) = cos(2 pi p / (2q)); reduce the fraction p / (2q).
  const int g = std::gcd(p, 2 * q);
  return static_cast<unsigned>(2 * q / g);
}

std::uint64_t kernel_dimension(const TransitionMatrix& t, const IntPolynomial& poly) {
  if (poly.empty()) throw std::invalid_argument("empty polynomial");
  std::uint64_t best = t.dim();
  for (std::uint64_t p : kPrimes) best = std::min(best, nullity_mod(t, poly, p));
  return best;
}

ExactAudit exact_multiplicity_audit(const TransitionMatrix& t, const SpectrumReport& report,
                                    unsigned max_level) {
  if (t.level() > max_level) {
    throw InfeasibleSize("exact audit capped at level " + std::to_string(max_level));
  }
  ExactAudit audit;
  const std::int64_t scale = t.scale();

  // Galois classes of the cos descriptors, keyed by modulus m.
  std::map<unsigned, ExactAuditLine> classes;
  for (const SpectrumEntry& e : report.entries) {
    if (const auto* c = std::get_if<EigenCos>(&e.descriptor)) {
      ExactAuditLine& line = classes[cos_class_modulus(c->p, c->q)];
      line.numeric += e.multiplicity;
    }
  }
  for (auto& [m, line] : classes) {
    // Members cos(p pi / q) with 2q/gcd(p, 2q) = m and 0 < p < q.
    for (int q = 2; q <= static_cast<int>(m); ++q) {
      for (int p = 1; p < q; ++p) {
        if (std::gcd(p, q) == 1 && cos_class_modulus(p, q) == m) {
          if (!line.label.empty()) line.label += "+";
          line.label += descriptor_label(EigenCos{p, q});
        }
      }
    }
    // Psi_m(2S/scale) scale^h = sum_i c_i 2^i scale^(h-i) S^i.
    const IntPolynomial psi = cos_minimal_polynomial(m);
    const std::size_t h = psi.size() - 1;
    IntPolynomial scaled(h + 1);
    for (std::size_t i = 0; i <= h; ++i) {
      std::int64_t f = psi[i];
      for (std::size_t j = 0; j < i; ++j) f *= 2;
      for (std::size_t j = i; j < h; ++j) f *= scale;
      scaled[i] = f;
    }
    line.exact = kernel_dimension(t, scaled);
    audit.lines.push_back(line);
  }

  for (const SpectrumEntry& e : report.entries) {
    std::int64_t num = 0, den = 1;
    if (std::holds_alternative<EigenOne>(e.descriptor)) {
      num = 1;
    } else if (const auto* r = std::get_if<EigenRational>(&e.descriptor)) {
      num = r->num;
      den = r->den;
    } else {
      continue;
    }
    ExactAuditLine line;
    line.label = rational_label(num, den);
    line.numeric = e.multiplicity;
    line.exact = kernel_dimension(t, {-scale * num, den});
    audit.lines.push_back(line);
  }

  for (const ExactAuditLine& line : audit.lines) audit.passed = audit.passed && line.agrees();
  return audit;
}

}  // namespace bbs

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbs/spectrum.hpp"
#include "bbs/transition.hpp"

namespace bbs {

// Integer coefficients, constant term first.
using IntPolynomial = std::vector<std::int64_t>;

// m-th cyclotomic polynomial.
IntPolynomial cyclotomic_polynomial(unsigned m);
// Minimal polynomial of 2 cos(2 pi / m) over the rationals (m >= 1).
IntPolynomial cos_minimal_polynomial(unsigned m);

// Galois class of cos(p pi / q): the m with cos(p pi/q) = cos(2 pi j/m),
// gcd(j, m) = 1. Every member of the class is a root of the same
// minimal polynomial.
unsigned cos_class_modulus(int p, int q);

// dim ker P(S) for P(x) = sum_i c_i x^i, computed as the nullity of P(S)
// reduced modulo two large primes (the smaller nullity is kept; reduction can
// only raise it).
std::uint64_t kernel_dimension(const TransitionMatrix& t, const IntPolynomial& poly);

struct ExactAuditLine {
  std::string label;           // class label, e.g. "cos(1/5*pi)+cos(3/5*pi)" or "1/4"
  std::uint64_t exact = 0;     // nullity of the class polynomial in S
  std::uint64_t numeric = 0;   // sum of report multiplicities over the class
  bool agrees() const { return exact == numeric; }
};

struct ExactAudit {
  bool passed = true;
  std::vector<ExactAuditLine> lines;
};

// Re-derives the multiplicity of every labeled descriptor in the report by
// exact kernel dimensions: rational a/b through b S - scale a I, and
// cos(p pi/q) through the minimal polynomial of its Galois class evaluated at
// 2S/scale. Throws InfeasibleSize above max_level.
ExactAudit exact_multiplicity_audit(const TransitionMatrix& t, const SpectrumReport& report,
                                    unsigned max_level = 10);

}  // namespace bbs

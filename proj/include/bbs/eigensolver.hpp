#pragma once

#include <cstddef>
#include <vector>

namespace bbs {

// Row-major square matrix of doubles. The eigensolver reads and overwrites
// only the lower triangle.
class DenseSymmetricMatrix {
 public:
  explicit DenseSymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  double* row(std::size_t r) { return data_.data() + r * n_; }
  const double* row(std::size_t r) const { return data_.data() + r * n_; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

struct Tridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  // size n-1; off_diagonal[i] couples i and i+1
};

// Householder reduction to tridiagonal form (eigenvalues preserved).
Tridiagonal tridiagonalize(DenseSymmetricMatrix a);

// Implicit-shift QL iteration. Throws EigensolverFailure (with `level` as
// context) when an eigenvalue needs more than 60 sweeps.
std::vector<double> tridiagonal_eigenvalues(Tridiagonal t, unsigned level = 0);

// Full spectrum in ascending order.
std::vector<double> symmetric_eigenvalues(DenseSymmetricMatrix a, unsigned level = 0);

}  // namespace bbs

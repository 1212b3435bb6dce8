#include "bbs/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bbs/errors.hpp"

namespace bbs {

namespace {

struct Reflector {
  double tau = 0.0;
  double beta = 0.0;
};

// Builds I - tau u u^T with u[0] = 1 mapping x to (beta, 0, ..., 0).
// x is overwritten by u.
Reflector make_reflector(double* x, std::size_t m) {
  Reflector h;
  const double alpha = x[0];
  double tail = 0.0;
  for (std::size_t r = 1; r < m; ++r) tail += x[r] * x[r];
  x[0] = 1.0;
  if (tail == 0.0) {
    h.beta = alpha;
    for (std::size_t r = 1; r < m; ++r) x[r] = 0.0;
    return h;
  }
  h.beta = -std::copysign(std::sqrt(alpha * alpha + tail), alpha);
  h.tau = (h.beta - alpha) / h.beta;
  const double inv = 1.0 / (alpha - h.beta);
  for (std::size_t r = 1; r < m; ++r) x[r] *= inv;
  return h;
}

}  // namespace

// Lower-triangle reduction A <- H A H, one reflector per column. The rank-2
// update left by column i is applied in the same sweep over the trailing
// block that forms the matrix-vector product for column i+1, so each step
// streams the trailing triangle once.
Tridiagonal tridiagonalize(DenseSymmetricMatrix a) {
  const std::size_t n = a.size();
  Tridiagonal t;
  t.diagonal.assign(n, 0.0);
  t.off_diagonal.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return t;
  if (n == 1) {
    t.diagonal[0] = a(0, 0);
    return t;
  }

  // Pending update A -= v w^T + w v^T on rows/cols >= pending_from.
  std::vector<double> v(n, 0.0), w(n, 0.0), u(n, 0.0), p(n, 0.0);
  bool pending = false;

  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (pending) {
      const double wi = w[i], vi = v[i];
      for (std::size_t r = i; r < n; ++r) a(r, i) -= v[r] * wi + w[r] * vi;
    }
    t.diagonal[i] = a(i, i);

    const std::size_t lo = i + 1;
    const std::size_t m = n - lo;
    for (std::size_t r = lo; r < n; ++r) u[r] = a(r, i);
    const Reflector h = make_reflector(u.data() + lo, m);
    t.off_diagonal[i] = h.beta;

    std::fill(p.begin() + lo, p.end(), 0.0);
    if (pending) {
      for (std::size_t r = lo; r < n; ++r) {
        double* ar = a.row(r);
        const double vr = v[r], wr = w[r], ur = u[r];
        const double* vp = v.data();
        const double* wp = w.data();
        const double* up = u.data();
        double* pp = p.data();
        double dot = 0.0;
#pragma omp simd reduction(+ : dot)
        for (std::size_t c = lo; c < r; ++c) {
          const double x = ar[c] - (vr * wp[c] + wr * vp[c]);
          ar[c] = x;
          dot += x * up[c];
          pp[c] += x * ur;
        }
        const double diag = ar[r] - 2.0 * vr * wr;
        ar[r] = diag;
        pp[r] += dot + diag * ur;
      }
    } else {
      for (std::size_t r = lo; r < n; ++r) {
        const double* ar = a.row(r);
        const double ur = u[r];
        const double* up = u.data();
        double* pp = p.data();
        double dot = 0.0;
#pragma omp simd reduction(+ : dot)
        for (std::size_t c = lo; c < r; ++c) {
          dot += ar[c] * up[c];
          pp[c] += ar[c] * ur;
        }
        pp[r] += dot + ar[r] * ur;
      }
    }

    pending = h.tau != 0.0;
    if (pending) {
      double pu = 0.0;
      for (std::size_t r = lo; r < n; ++r) {
        p[r] *= h.tau;
        pu += p[r] * u[r];
      }
      const double k = -0.5 * h.tau * pu;
      for (std::size_t r = lo; r < n; ++r) {
        v[r] = u[r];
        w[r] = p[r] + k * u[r];
      }
    }
  }

  if (pending) {
    for (std::size_t r = n - 2; r < n; ++r) {
      for (std::size_t c = n - 2; c <= r; ++c) a(r, c) -= v[r] * w[c] + w[r] * v[c];
    }
  }
  t.diagonal[n - 2] = a(n - 2, n - 2);
  t.diagonal[n - 1] = a(n - 1, n - 1);
  t.off_diagonal[n - 2] = a(n - 1, n - 2);
  return t;
}

std::vector<double> tridiagonal_eigenvalues(Tridiagonal t, unsigned level) {
  std::vector<double>& d = t.diagonal;
  const std::size_t n = d.size();
  std::vector<double> e(n, 0.0);
  std::copy(t.off_diagonal.begin(), t.off_diagonal.end(), e.begin());

  // Off-diagonals below eps * ||T|| are treated as zero; eigenvalue errors are
  // of that order anyway, and a purely relative test stalls on clusters at 0.
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::fabs(d[i]) + std::fabs(e[i]));
  const double negligible = std::numeric_limits<double>::epsilon() * norm;

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= negligible || std::fabs(e[m]) + dd == dd) break;
      }
      if (m == l) break;
      if (++sweeps > 60) {
        throw EigensolverFailure("implicit QL did not converge at level " +
                                     std::to_string(level) + " (eigenvalue " +
                                     std::to_string(l) + ")",
                                 level);
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t ii = m; ii-- > l;) {
        const double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (true);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> symmetric_eigenvalues(DenseSymmetricMatrix a, unsigned level) {
  return tridiagonal_eigenvalues(tridiagonalize(std::move(a)), level);
}

}  // namespace bbs

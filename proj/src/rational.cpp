#include "curvfun/rational.hpp"

#include <cmath>
#include <utility>

#include "curvfun/error.hpp"

namespace curvfun {

Rational rationalize(double x, long max_den, double tol) {
  if (!std::isfinite(x)) throw Error(ErrorCode::kNotExact, "cannot rationalize a non-finite value");
  // Convergents h/k of the continued fraction of |x|.
  const bool negative = x < 0;
  double r = std::fabs(x);
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(r));
  mpz_class k_prev = 0, k = 1;
  double frac = r - std::floor(r);
  while (frac > 1e-15) {
    r = 1.0 / frac;
    const long a = static_cast<long>(std::floor(r));
    frac = r - std::floor(r);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    if (std::fabs(mpq_class(h, k).get_d() - std::fabs(x)) <= tol * 1e-3) break;
  }
  Rational q(h, k);
  q.canonicalize();
  if (negative) q = -q;
  if (std::fabs(q.get_d() - x) > tol)
    throw Error(ErrorCode::kNotExact, "value " + std::to_string(x) + " is not a small rational");
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational determinant(Mat<Rational> a) {
  const int n = a.rows();
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (a(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(a(c, j), a(pivot, j));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const Rational f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

Mat<Rational> inverse(Mat<Rational> a) {
  const int n = a.rows();
  Mat<Rational> inv = Mat<Rational>::identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (a(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw Error(ErrorCode::kSingularL, "matrix is singular");
    if (pivot != c) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(c, j), a(pivot, j));
        std::swap(inv(c, j), inv(pivot, j));
      }
    }
    const Rational p = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace curvfun

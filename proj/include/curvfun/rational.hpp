#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "curvfun/matrix.hpp"

namespace curvfun {

using Rational = mpq_class;

/// Best rational approximation of x with denominator at most max_den
/// (continued fractions). Throws kNotExact if the result is farther than tol
/// from x, so callers can rely on the value being the exact rational the
/// floating computation approximates.
Rational rationalize(double x, long max_den = 1L << 20, double tol = 1e-12);

std::string to_string(const Rational& q);

/// Exact determinant by Gaussian elimination over the rationals.
Rational determinant(Mat<Rational> a);

/// Exact inverse by Gauss-Jordan elimination. Throws kSingularL if singular.
Mat<Rational> inverse(Mat<Rational> a);

}  // namespace curvfun

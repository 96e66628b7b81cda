#pragma once

// Forward-mode differentiation types.
//
// Jet<T> is a truncated second-order Taylor expansion in up to kMaxVars
// variables (value, gradient, packed Hessian). It is the multivariate form of
// a hyper-dual number: a single evaluation of a field on seeded jets yields
// every first and second partial exactly, with no step-size error.
//
// Dual<T> adds one extra first-order direction on top of any scalar and is
// used to differentiate embeddings once more before forming J^T J.

#include <array>
#include <cmath>
#include <cstdint>
#include <type_traits>

#include "curvfun/error.hpp"

namespace curvfun {

inline constexpr int kMaxVars = 8;
inline constexpr int kPackedHessian = kMaxVars * (kMaxVars + 1) / 2;

/// Packed index of the (i, j) Hessian entry, symmetric in its arguments.
constexpr int hess_index(int i, int j) {
  return i <= j ? j * (j + 1) / 2 + i : i * (i + 1) / 2 + j;
}

template <class T>
class Jet {
 public:
  Jet() : v_(0) {}
  Jet(const T& value) : v_(value) {}  // NOLINT: constants promote implicitly
  template <class U>
    requires std::is_arithmetic_v<U> && (!std::is_same_v<U, T>)
  Jet(U value) : v_(value) {}  // NOLINT

  /// Independent variable number `index` of `nvars` at `value`.
  static Jet variable(const T& value, int index, int nvars) {
    Jet j(value);
    j.n_ = nvars;
    j.g_[index] = T(1);
    return j;
  }

  int nvars() const { return n_; }
  const T& value() const { return v_; }
  const T& grad(int i) const { return g_[i]; }
  const T& hess(int i, int j) const { return h_[hess_index(i, j)]; }
  T& value_ref() { return v_; }
  T& grad_ref(int i) { return g_[i]; }
  T& hess_ref(int i, int j) { return h_[hess_index(i, j)]; }

  Jet& operator+=(const Jet& o) {
    v_ += o.v_;
    widen(o.n_);
    for (int i = 0; i < o.n_; ++i) g_[i] += o.g_[i];
    for (int k = 0; k < o.n_ * (o.n_ + 1) / 2; ++k) h_[k] += o.h_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v_ -= o.v_;
    widen(o.n_);
    for (int i = 0; i < o.n_; ++i) g_[i] -= o.g_[i];
    for (int k = 0; k < o.n_ * (o.n_ + 1) / 2; ++k) h_[k] -= o.h_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(const Jet& a) {
    Jet r;
    r.n_ = a.n_;
    r.v_ = -a.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = -a.g_[i];
    for (int k = 0; k < a.n_ * (a.n_ + 1) / 2; ++k) r.h_[k] = -a.h_[k];
    return r;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.n_ = a.n_ > b.n_ ? a.n_ : b.n_;
    r.v_ = a.v_ * b.v_;
    for (int i = 0; i < r.n_; ++i) r.g_[i] = a.v_ * b.g_[i] + b.v_ * a.g_[i];
    for (int j = 0; j < r.n_; ++j) {
      for (int i = 0; i <= j; ++i) {
        const int k = hess_index(i, j);
        r.h_[k] = a.v_ * b.h_[k] + b.v_ * a.h_[k] + a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i];
      }
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.v_ == T(0)) throw Error(ErrorCode::kNonFinite, "division by zero in jet");
    const T inv = T(1) / b.v_;
    return a * b.apply(inv, -inv * inv, T(2) * inv * inv * inv);
  }

  /// Chain rule for a scalar function with f(v)=f0, f'(v)=f1, f''(v)=f2.
  Jet apply(const T& f0, const T& f1, const T& f2) const {
    Jet r;
    r.n_ = n_;
    r.v_ = f0;
    for (int i = 0; i < n_; ++i) r.g_[i] = f1 * g_[i];
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i <= j; ++i) {
        const int k = hess_index(i, j);
        r.h_[k] = f1 * h_[k] + f2 * g_[i] * g_[j];
      }
    }
    return r;
  }

 private:
  void widen(int n) {
    if (n > n_) n_ = n;
  }

  int n_ = 0;
  T v_;
  std::array<T, kMaxVars> g_{};
  std::array<T, kPackedHessian> h_{};
};

template <class T>
const T& primal(const Jet<T>& j) {
  return j.value();
}

// Transcendental functions on jets of doubles. Jets over exact types only
// support field operations and integer powers.
inline Jet<double> sin(const Jet<double>& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.apply(s, c, -s);
}
inline Jet<double> cos(const Jet<double>& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.apply(c, -s, -c);
}
inline Jet<double> exp(const Jet<double>& a) {
  const double e = std::exp(a.value());
  return a.apply(e, e, e);
}
inline Jet<double> log(const Jet<double>& a) {
  const double v = a.value();
  return a.apply(std::log(v), 1.0 / v, -1.0 / (v * v));
}
inline Jet<double> sqrt(const Jet<double>& a) {
  const double r = std::sqrt(a.value());
  if (r == 0.0) throw Error(ErrorCode::kNonFinite, "sqrt derivative at zero");
  return a.apply(r, 0.5 / r, -0.25 / (r * a.value()));
}

template <class T>
class Dual {
 public:
  Dual() : re_(0), du_(0) {}
  Dual(const T& re) : re_(re), du_(0) {}  // NOLINT
  template <class U>
    requires std::is_arithmetic_v<U> && (!std::is_same_v<U, T>)
  Dual(U re) : re_(re), du_(0) {}  // NOLINT
  Dual(const T& re, const T& du) : re_(re), du_(du) {}

  const T& re() const { return re_; }
  const T& du() const { return du_; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.re_ + b.re_, a.du_ + b.du_}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.re_ - b.re_, a.du_ - b.du_}; }
  friend Dual operator-(const Dual& a) { return {-a.re_, -a.du_}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.re_ * b.re_, a.re_ * b.du_ + a.du_ * b.re_};
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    const T q = a.re_ / b.re_;
    return {q, (a.du_ - q * b.du_) / b.re_};
  }
  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

 private:
  T re_;
  T du_;
};

template <class T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.re()), cos(a.re()) * a.du()};
}
template <class T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.re()), -(sin(a.re()) * a.du())};
}
template <class T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.re());
  return {e, e * a.du()};
}
template <class T>
Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.re()), a.du() / a.re()};
}
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T r = sqrt(a.re());
  return {r, a.du() / (T(2) * r)};
}

/// Integer power by repeated squaring; exact for rational scalars.
template <class S>
S ipow(S base, long exponent) {
  if (exponent < 0) return S(1) / ipow(base, -exponent);
  S result(1);
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

}  // namespace curvfun

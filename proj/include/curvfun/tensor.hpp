#pragma once

// Tensor core: metric fields, their jets, Christoffel symbols, the Riemann
// tensor and sectional curvatures in an orthonormal frame.
//
// Sign convention: R_{ijkl} = <R(∂_i, ∂_j) ∂_l, ∂_k> with
// R(X, Y) = ∇_X ∇_Y - ∇_Y ∇_X, so that R_{ijij} is the sectional curvature of
// an orthonormal pair and the unit sphere has R_{ijij} = +1.

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "curvfun/error.hpp"
#include "curvfun/frames.hpp"
#include "curvfun/jet.hpp"
#include "curvfun/matrix.hpp"
#include "curvfun/rational.hpp"

namespace curvfun {

using ChartPoint = std::vector<double>;

enum class MetricProvenance { kClosedForm, kEmbedding, kConstant };

const char* to_string(MetricProvenance p);

/// Value, gradient and Hessian of one scalar at a point.
struct SecondJet {
  double value = 0;
  std::vector<double> gradient;
  Mat<double> hessian;
};

/// Metric value with all first and second chart derivatives:
/// d1[k](i, j) = ∂_k g_ij and d2[k * n + l](i, j) = ∂_k ∂_l g_ij.
template <class T>
struct MetricJet {
  Mat<T> value;
  std::vector<Mat<T>> d1;
  std::vector<Mat<T>> d2;
  int dim() const { return value.rows(); }
};

using ScalarField = std::function<Jet<double>(std::span<const Jet<double>>)>;

/// second_jet of a scalar field: exact first and second partials at x.
/// Throws kNonFinite if any component is NaN or infinite.
SecondJet second_jet(const ScalarField& f, std::span<const double> x);

/// Smooth map from chart points into Euclidean space.
class EmbeddingMap {
 public:
  using JetFn = std::function<std::vector<Dual<Jet<double>>>(std::span<const Dual<Jet<double>>>)>;
  using DualFn = std::function<std::vector<Dual<double>>(std::span<const Dual<double>>)>;

  EmbeddingMap(int dim, int ambient_dim, JetFn jet_fn, DualFn dual_fn)
      : dim_(dim), ambient_(ambient_dim), jet_fn_(std::move(jet_fn)), dual_fn_(std::move(dual_fn)) {}

  /// Build from a generic callable `f(std::span<const S>) -> std::vector<S>`.
  template <class F>
  static EmbeddingMap from(int dim, int ambient_dim, F f) {
    return EmbeddingMap(
        dim, ambient_dim, [f](std::span<const Dual<Jet<double>>> x) { return f(x); },
        [f](std::span<const Dual<double>> x) { return f(x); });
  }

  int dim() const { return dim_; }
  int ambient_dim() const { return ambient_; }

  std::vector<double> eval(std::span<const double> x) const;
  /// ambient_dim x dim Jacobian.
  Eigen::MatrixXd jacobian(std::span<const double> x) const;
  /// J^T J with jets in the chart variables (needs third derivatives of r).
  Mat<Jet<double>> induced_jet(std::span<const Jet<double>> x) const;

 private:
  int dim_;
  int ambient_;
  JetFn jet_fn_;
  DualFn dual_fn_;
};

/// First fundamental form J^T J of an embedding. Throws kDegenerateChart if
/// the Jacobian is rank deficient at x.
Eigen::MatrixXd induced_metric(const EmbeddingMap& r, std::span<const double> x);

class MetricField {
 public:
  using JetFn = std::function<Mat<Jet<double>>(std::span<const Jet<double>>)>;
  using ValueFn = std::function<Mat<double>(std::span<const double>)>;
  using ExactFn = std::function<Mat<Jet<Rational>>(std::span<const Jet<Rational>>)>;

  MetricField(int dim, MetricProvenance provenance, JetFn jet_fn, ValueFn value_fn, ExactFn exact_fn = {});

  /// Closed-form chart metric from a generic callable
  /// `f(std::span<const S>) -> Mat<S>`, instantiated for doubles and jets.
  template <class F>
  static MetricField closed_form(int dim, F f) {
    return MetricField(
        dim, MetricProvenance::kClosedForm, [f](std::span<const Jet<double>> x) { return f(x); },
        [f](std::span<const double> x) { return f(x); });
  }

  /// As closed_form, additionally instantiated over exact rationals. The
  /// callable must use field operations and integer powers only.
  template <class F>
  static MetricField closed_form_exact(int dim, F f) {
    return MetricField(
        dim, MetricProvenance::kClosedForm, [f](std::span<const Jet<double>> x) { return f(x); },
        [f](std::span<const double> x) { return f(x); },
        [f](std::span<const Jet<Rational>> x) { return f(x); });
  }

  static MetricField constant(const Eigen::MatrixXd& g);
  static MetricField induced(EmbeddingMap r);
  /// Block-diagonal metric of a Riemannian product; chart coordinates of `a`
  /// come first.
  static MetricField product(const MetricField& a, const MetricField& b);

  int dim() const { return dim_; }
  MetricProvenance provenance() const { return provenance_; }
  bool has_exact() const { return static_cast<bool>(exact_fn_); }
  const EmbeddingMap* embedding() const { return embedding_ ? &*embedding_ : nullptr; }

  /// Metric value; checks symmetry (1e-12) and positive definiteness
  /// (Cholesky). Throws kSingularMetric on failure.
  Eigen::MatrixXd value(std::span<const double> x) const;
  /// Metric value without the checks (used by finite-difference oracles).
  Mat<double> raw_value(std::span<const double> x) const;

  MetricJet<double> jet(std::span<const double> x) const;
  /// The metric evaluated on caller-seeded jets (no checks).
  Mat<Jet<double>> eval_jet(std::span<const Jet<double>> x) const { return jet_fn_(x); }
  MetricJet<Rational> exact_jet(std::span<const Rational> x) const;

 private:
  int dim_;
  MetricProvenance provenance_;
  JetFn jet_fn_;
  ValueFn value_fn_;
  ExactFn exact_fn_;
  std::optional<EmbeddingMap> embedding_;
};

/// Cholesky-checked inverse; throws kSingularMetric if g is not SPD.
Mat<double> invert_metric(const Mat<double>& g);
Mat<Rational> invert_metric(const Mat<Rational>& g);

/// Γ^k_{ij} stored as gamma(k, i, j).
template <class T>
Tensor3<T> christoffel_from_jet(const MetricJet<T>& mj) {
  const int n = mj.dim();
  const Mat<T> ginv = invert_metric(mj.value);
  Tensor3<T> gamma(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        T s(0);
        for (int l = 0; l < n; ++l) {
          const T lowered = mj.d1[i](j, l) + mj.d1[j](i, l) - mj.d1[l](i, j);
          s += ginv(k, l) * lowered;
        }
        s /= T(2);
        gamma(k, i, j) = s;
        gamma(k, j, i) = s;
      }
    }
  }
  return gamma;
}

/// Riemann tensor R_{ijkl} from the metric 2-jet (convention in the file
/// header). Needs derivatives of Γ, assembled from d1 and d2.
template <class T>
Tensor4<T> riemann_from_jet(const MetricJet<T>& mj) {
  const int n = mj.dim();
  const Mat<T> ginv = invert_metric(mj.value);
  // lowered Christoffel Γ_{m,jk} and its derivative ∂_i Γ_{m,jk}
  Tensor3<T> low(n);  // (m, j, k)
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) low(m, j, k) = (mj.d1[j](k, m) + mj.d1[k](j, m) - mj.d1[m](j, k)) / T(2);
  Tensor3<T> gamma(n);  // Γ^l_{jk} as (l, j, k)
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        T s(0);
        for (int m = 0; m < n; ++m) s += ginv(l, m) * low(m, j, k);
        gamma(l, j, k) = s;
      }
  // ∂_i g^{lm} = -g^{la} ∂_i g_ab g^{bm}
  std::vector<Mat<T>> dginv(static_cast<std::size_t>(n), Mat<T>(n, n));
  for (int i = 0; i < n; ++i) {
    Mat<T> tmp(n, n);
    for (int a = 0; a < n; ++a)
      for (int m = 0; m < n; ++m) {
        T s(0);
        for (int b = 0; b < n; ++b) s += mj.d1[i](a, b) * ginv(b, m);
        tmp(a, m) = s;
      }
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) {
        T s(0);
        for (int a = 0; a < n; ++a) s += ginv(l, a) * tmp(a, m);
        dginv[i](l, m) = -s;
      }
  }
  // dgamma(i)(l, j, k) = ∂_i Γ^l_{jk}
  std::vector<Tensor3<T>> dgamma(static_cast<std::size_t>(n), Tensor3<T>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        std::vector<T> dlow(static_cast<std::size_t>(n));
        for (int m = 0; m < n; ++m)
          dlow[m] = (mj.d2[i * n + j](k, m) + mj.d2[i * n + k](j, m) - mj.d2[i * n + m](j, k)) / T(2);
        for (int l = 0; l < n; ++l) {
          T s(0);
          for (int m = 0; m < n; ++m) s += dginv[i](l, m) * low(m, j, k) + ginv(l, m) * dlow[m];
          dgamma[i](l, j, k) = s;
          dgamma[i](l, k, j) = s;
        }
      }
  }
  // R^l_{ijk} = ∂_i Γ^l_{jk} - ∂_j Γ^l_{ik} + Γ^l_{im} Γ^m_{jk} - Γ^l_{jm} Γ^m_{ik}
  // R_{ijkl} = g_{km} R^m_{ijl}
  Tensor4<T> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat<T> up(n, n);  // (m, l) -> R^m_{ijl}
      for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l) {
          T s = dgamma[i](m, j, l) - dgamma[j](m, i, l);
          for (int p = 0; p < n; ++p) s += gamma(m, i, p) * gamma(p, j, l) - gamma(m, j, p) * gamma(p, i, l);
          up(m, l) = s;
        }
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          T s(0);
          for (int m = 0; m < n; ++m) s += mj.value(k, m) * up(m, l);
          r(i, j, k, l) = s;
          r(j, i, k, l) = -s;
        }
    }
  return r;
}

Tensor3<double> christoffel(const MetricField& g, std::span<const double> x);

/// Central-difference oracle for Γ using only metric values.
Tensor3<double> christoffel_fd(const MetricField& g, std::span<const double> x, double h = 1e-5);

Tensor4<double> riemann(const MetricField& g, std::span<const double> x);

/// Exact Riemann tensor for metrics with a rational instantiation.
Tensor4<Rational> riemann_exact(const MetricField& g, std::span<const Rational> x);

/// R expressed in the frame: R'_{ijkl} = R_{abcd} t_i^a t_j^b t_k^c t_l^d.
Tensor4<double> to_frame(const Tensor4<double>& r, const Eigen::MatrixXd& t);

/// Sectional matrix K_ij = R_{ijij} of a tensor already in an orthonormal frame.
Mat<double> sectional_matrix(const Tensor4<double>& r_frame);
Mat<Rational> sectional_matrix(const Tensor4<Rational>& r_frame);

struct CurvatureAtPoint {
  Tensor4<double> riemann;        // chart basis
  Tensor4<double> riemann_frame;  // orthonormal frame basis
  Mat<double> sectional;          // in `frame`
  Frame frame;
  Eigen::MatrixXd metric;
};

CurvatureAtPoint curvature_at(const MetricField& g, std::span<const double> x, const Frame& frame);

/// Sectional curvature K_ij of frame vectors i, j. Throws kDegeneratePlane if
/// i == j and kNonOrthonormalFrame if the frame fails the 1e-10 check.
double sectional(const CurvatureAtPoint& c, int i, int j);

/// Largest violation of antisymmetry, pair symmetry and first Bianchi,
/// relative to the largest entry magnitude (absolute if all entries < 1e-6).
double symmetry_defect(const Tensor4<double>& r);

}  // namespace curvfun

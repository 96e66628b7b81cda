#include "curvfun/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace curvfun {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kSingularMetric: return "SingularMetric";
    case ErrorCode::kDegenerateChart: return "DegenerateChart";
    case ErrorCode::kDegeneratePlane: return "DegeneratePlane";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kBadDimension: return "BadDimension";
    case ErrorCode::kNotClosed: return "NotClosed";
    case ErrorCode::kNotBiInvariant: return "NotBiInvariant";
    case ErrorCode::kNonOrthonormalFrame: return "NonOrthonormalFrame";
    case ErrorCode::kChartSingularity: return "ChartSingularity";
    case ErrorCode::kNotLocallyInjective: return "NotLocallyInjective";
    case ErrorCode::kSingularL: return "SingularL";
    case ErrorCode::kInvalidComplex: return "InvalidComplex";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kNotExact: return "NotExact";
    case ErrorCode::kConfig: return "Config";
  }
  return "Unknown";
}

const char* to_string(MetricProvenance p) {
  switch (p) {
    case MetricProvenance::kClosedForm: return "closed-form chart";
    case MetricProvenance::kEmbedding: return "embedding-induced";
    case MetricProvenance::kConstant: return "constant";
  }
  return "unknown";
}

namespace {

std::vector<Jet<double>> seed_jets(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n > kMaxVars) throw Error(ErrorCode::kBadDimension, "chart dimension exceeds " + std::to_string(kMaxVars));
  std::vector<Jet<double>> xs;
  xs.reserve(x.size());
  for (int i = 0; i < n; ++i) xs.push_back(Jet<double>::variable(x[i], i, n));
  return xs;
}

void check_finite(double v, std::span<const double> x, const char* what) {
  if (!std::isfinite(v))
    throw Error(ErrorCode::kNonFinite, std::string(what) + " evaluated to a non-finite value",
                std::vector<double>(x.begin(), x.end()));
}

template <class T>
MetricJet<T> unpack(const Mat<Jet<T>>& m, int n) {
  MetricJet<T> out;
  out.value = Mat<T>(n, n);
  out.d1.assign(static_cast<std::size_t>(n), Mat<T>(n, n));
  out.d2.assign(static_cast<std::size_t>(n * n), Mat<T>(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Jet<T>& e = m(i, j);
      out.value(i, j) = e.value();
      for (int k = 0; k < n; ++k) {
        out.d1[k](i, j) = e.grad(k);
        for (int l = 0; l < n; ++l) out.d2[k * n + l](i, j) = e.hess(k, l);
      }
    }
  return out;
}

}  // namespace

SecondJet second_jet(const ScalarField& f, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  const auto xs = seed_jets(x);
  const Jet<double> r = f(xs);
  SecondJet out;
  out.value = r.value();
  check_finite(out.value, x, "field");
  out.gradient.resize(x.size());
  out.hessian = Mat<double>(n, n);
  for (int i = 0; i < n; ++i) {
    out.gradient[i] = r.grad(i);
    check_finite(out.gradient[i], x, "gradient");
    for (int j = 0; j < n; ++j) {
      out.hessian(i, j) = r.hess(i, j);
      check_finite(out.hessian(i, j), x, "hessian");
    }
  }
  return out;
}

std::vector<double> EmbeddingMap::eval(std::span<const double> x) const {
  std::vector<Dual<double>> xs(x.begin(), x.end());
  const auto r = dual_fn_(xs);
  std::vector<double> out;
  out.reserve(r.size());
  for (const auto& v : r) out.push_back(v.re());
  return out;
}

Eigen::MatrixXd EmbeddingMap::jacobian(std::span<const double> x) const {
  Eigen::MatrixXd jac(ambient_, dim_);
  std::vector<Dual<double>> xs(x.size());
  for (int j = 0; j < dim_; ++j) {
    for (int k = 0; k < dim_; ++k) xs[k] = Dual<double>(x[k], k == j ? 1.0 : 0.0);
    const auto r = dual_fn_(xs);
    for (int a = 0; a < ambient_; ++a) jac(a, j) = r[a].du();
  }
  return jac;
}

Mat<Jet<double>> EmbeddingMap::induced_jet(std::span<const Jet<double>> x) const {
  std::vector<std::vector<Jet<double>>> cols(static_cast<std::size_t>(dim_));
  std::vector<Dual<Jet<double>>> xs(x.size());
  for (int j = 0; j < dim_; ++j) {
    for (int k = 0; k < dim_; ++k) xs[k] = Dual<Jet<double>>(x[k], Jet<double>(k == j ? 1.0 : 0.0));
    const auto r = jet_fn_(xs);
    cols[j].reserve(r.size());
    for (const auto& v : r) cols[j].push_back(v.du());
  }
  Mat<Jet<double>> g(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      Jet<double> s;
      for (int a = 0; a < ambient_; ++a) s += cols[i][a] * cols[j][a];
      g(i, j) = s;
      g(j, i) = s;
    }
  return g;
}

Eigen::MatrixXd induced_metric(const EmbeddingMap& r, std::span<const double> x) {
  const Eigen::MatrixXd jac = r.jacobian(x);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& s = svd.singularValues();
  if (s.size() < r.dim() || s(s.size() - 1) <= 1e-10 * std::max(1.0, s(0)))
    throw Error(ErrorCode::kDegenerateChart, "embedding Jacobian is rank deficient",
                std::vector<double>(x.begin(), x.end()));
  return jac.transpose() * jac;
}

MetricField::MetricField(int dim, MetricProvenance provenance, JetFn jet_fn, ValueFn value_fn, ExactFn exact_fn)
    : dim_(dim),
      provenance_(provenance),
      jet_fn_(std::move(jet_fn)),
      value_fn_(std::move(value_fn)),
      exact_fn_(std::move(exact_fn)) {
  if (dim_ < 1 || dim_ > kMaxVars) throw Error(ErrorCode::kBadDimension, "metric dimension out of range");
}

MetricField MetricField::constant(const Eigen::MatrixXd& g) {
  const int n = static_cast<int>(g.rows());
  auto make = [g, n](auto x) {
    using S = typename decltype(x)::value_type;
    Mat<S> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = S(g(i, j));
    return m;
  };
  MetricField f(
      n, MetricProvenance::kConstant, [make](std::span<const Jet<double>> x) { return make(x); },
      [make](std::span<const double> x) { return make(x); });
  return f;
}

MetricField MetricField::induced(EmbeddingMap r) {
  const int n = r.dim();
  MetricField f(
      n, MetricProvenance::kEmbedding, [r](std::span<const Jet<double>> x) { return r.induced_jet(x); },
      [r](std::span<const double> x) { return from_eigen(induced_metric(r, x)); });
  f.embedding_ = std::move(r);
  return f;
}

MetricField MetricField::product(const MetricField& a, const MetricField& b) {
  const int na = a.dim(), nb = b.dim(), n = na + nb;
  if (n > kMaxVars) throw Error(ErrorCode::kBadDimension, "product dimension exceeds " + std::to_string(kMaxVars));
  auto block = [na, nb, n](const auto& ga, const auto& gb) {
    using S = std::decay_t<decltype(ga(0, 0))>;
    Mat<S> m(n, n);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) m(i, j) = ga(i, j);
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) m(na + i, na + j) = gb(i, j);
    return m;
  };
  JetFn jet = [a, b, na, block](std::span<const Jet<double>> x) {
    return block(a.jet_fn_(x.first(static_cast<std::size_t>(na))), b.jet_fn_(x.subspan(static_cast<std::size_t>(na))));
  };
  ValueFn value = [a, b, na, block](std::span<const double> x) {
    return block(a.value_fn_(x.first(static_cast<std::size_t>(na))), b.value_fn_(x.subspan(static_cast<std::size_t>(na))));
  };
  ExactFn exact;
  if (a.has_exact() && b.has_exact())
    exact = [a, b, na, block](std::span<const Jet<Rational>> x) {
      return block(a.exact_fn_(x.first(static_cast<std::size_t>(na))),
                   b.exact_fn_(x.subspan(static_cast<std::size_t>(na))));
    };
  const bool closed = a.provenance() == MetricProvenance::kClosedForm || b.provenance() == MetricProvenance::kClosedForm;
  const bool embedded = a.provenance() == MetricProvenance::kEmbedding || b.provenance() == MetricProvenance::kEmbedding;
  const MetricProvenance prov =
      embedded ? MetricProvenance::kEmbedding : (closed ? MetricProvenance::kClosedForm : MetricProvenance::kConstant);
  return MetricField(n, prov, std::move(jet), std::move(value), std::move(exact));
}

Mat<double> MetricField::raw_value(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw Error(ErrorCode::kBadDimension, "chart point has wrong length");
  return value_fn_(x);
}

namespace {

void check_metric(const Mat<double>& g, std::span<const double> x) {
  const int n = g.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      check_finite(g(i, j), x, "metric");
      if (std::fabs(g(i, j) - g(j, i)) > 1e-12)
        throw Error(ErrorCode::kSingularMetric, "metric is not symmetric", std::vector<double>(x.begin(), x.end()));
    }
  Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(g));
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::kSingularMetric, "metric is not positive definite",
                std::vector<double>(x.begin(), x.end()));
}

}  // namespace

Eigen::MatrixXd MetricField::value(std::span<const double> x) const {
  const Mat<double> g = raw_value(x);
  check_metric(g, x);
  return to_eigen(g);
}

MetricJet<double> MetricField::jet(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw Error(ErrorCode::kBadDimension, "chart point has wrong length");
  const auto xs = seed_jets(x);
  MetricJet<double> mj = unpack(jet_fn_(xs), dim_);
  for (const auto& d : mj.d1)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) check_finite(d(i, j), x, "metric derivative");
  for (const auto& d : mj.d2)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) check_finite(d(i, j), x, "metric second derivative");
  check_metric(mj.value, x);
  return mj;
}

MetricJet<Rational> MetricField::exact_jet(std::span<const Rational> x) const {
  if (!exact_fn_) throw Error(ErrorCode::kNotExact, "metric has no exact instantiation");
  const int n = dim_;
  std::vector<Jet<Rational>> xs;
  for (int i = 0; i < n; ++i) xs.push_back(Jet<Rational>::variable(x[i], i, n));
  return unpack(exact_fn_(xs), n);
}

Mat<double> invert_metric(const Mat<double>& g) {
  Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(g));
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::kSingularMetric, "metric is not positive definite");
  const auto n = g.rows();
  return from_eigen(llt.solve(Eigen::MatrixXd::Identity(n, n)));
}

Mat<Rational> invert_metric(const Mat<Rational>& g) {
  try {
    return inverse(g);
  } catch (const Error&) {
    throw Error(ErrorCode::kSingularMetric, "metric is singular");
  }
}

Tensor3<double> christoffel(const MetricField& g, std::span<const double> x) {
  return christoffel_from_jet(g.jet(x));
}

Tensor3<double> christoffel_fd(const MetricField& g, std::span<const double> x, double h) {
  const int n = g.dim();
  MetricJet<double> mj;
  mj.value = g.raw_value(x);
  std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
  for (int k = 0; k < n; ++k) {
    xp[k] = x[k] + h;
    xm[k] = x[k] - h;
    const Mat<double> gp = g.raw_value(xp), gm = g.raw_value(xm);
    Mat<double> d(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = (gp(i, j) - gm(i, j)) / (2 * h);
    mj.d1.push_back(d);
    xp[k] = xm[k] = x[k];
  }
  return christoffel_from_jet(mj);
}

Tensor4<double> riemann(const MetricField& g, std::span<const double> x) {
  return riemann_from_jet(g.jet(x));
}

Tensor4<Rational> riemann_exact(const MetricField& g, std::span<const Rational> x) {
  return riemann_from_jet(g.exact_jet(x));
}

Tensor4<double> to_frame(const Tensor4<double>& r, const Eigen::MatrixXd& t) {
  const int n = r.dim();
  // contract one index at a time: n^5 work instead of n^8
  Tensor4<double> a(n), b(n);
  for (int i = 0; i < n; ++i)
    for (int q = 0; q < n; ++q)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0;
          for (int p = 0; p < n; ++p) s += t(p, i) * r(p, q, c, d);
          a(i, q, c, d) = s;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0;
          for (int q = 0; q < n; ++q) s += t(q, j) * a(i, q, c, d);
          b(i, j, c, d) = s;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int d = 0; d < n; ++d) {
          double s = 0;
          for (int c = 0; c < n; ++c) s += t(c, k) * b(i, j, c, d);
          a(i, j, k, d) = s;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int d = 0; d < n; ++d) s += t(d, l) * a(i, j, k, d);
          b(i, j, k, l) = s;
        }
  return b;
}

Mat<double> sectional_matrix(const Tensor4<double>& rf) {
  const int n = rf.dim();
  Mat<double> k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (rf(i, j, i, j) + rf(j, i, j, i));
      k(i, j) = v;
      k(j, i) = v;
    }
  return k;
}

Mat<Rational> sectional_matrix(const Tensor4<Rational>& rf) {
  const int n = rf.dim();
  Mat<Rational> k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      k(i, j) = rf(i, j, i, j);
      k(j, i) = rf(i, j, i, j);
    }
  return k;
}

CurvatureAtPoint curvature_at(const MetricField& g, std::span<const double> x, const Frame& frame) {
  CurvatureAtPoint c;
  const MetricJet<double> mj = g.jet(x);
  c.metric = to_eigen(mj.value);
  c.riemann = riemann_from_jet(mj);
  c.frame = frame;
  c.riemann_frame = to_frame(c.riemann, frame.vectors());
  c.sectional = sectional_matrix(c.riemann_frame);
  return c;
}

double sectional(const CurvatureAtPoint& c, int i, int j) {
  if (i == j) throw Error(ErrorCode::kDegeneratePlane, "sectional curvature needs two distinct frame vectors");
  if (c.frame.orthonormality_defect(c.metric) > kOrthonormalTol)
    throw Error(ErrorCode::kNonOrthonormalFrame, "frame is not orthonormal for the metric");
  return c.sectional(i, j);
}

double symmetry_defect(const Tensor4<double>& r) {
  const int n = r.dim();
  double scale = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) scale = std::max(scale, std::fabs(r(i, j, k, l)));
  if (scale < 1e-6) scale = 1;
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = r(i, j, k, l);
          worst = std::max(worst, std::fabs(v + r(j, i, k, l)));
          worst = std::max(worst, std::fabs(v + r(i, j, l, k)));
          worst = std::max(worst, std::fabs(v - r(k, l, i, j)));
          worst = std::max(worst, std::fabs(v + r(i, k, l, j) + r(i, l, j, k)));
        }
  return worst / scale;
}

}  // namespace curvfun

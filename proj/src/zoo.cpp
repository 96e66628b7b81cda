#include "curvfun/zoo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "curvfun/error.hpp"
#include "curvfun/functionals.hpp"

namespace curvfun {

namespace {

constexpr double kPi = std::numbers::pi;

GridAxis gl_axis(int nodes, double lo, double hi) { return {nodes, QuadratureRule::kGaussLegendre, lo, hi, false}; }
GridAxis periodic_axis(int nodes, double lo = 0, double hi = 2 * kPi) {
  return {nodes, QuadratureRule::kPeriodicTrapezoid, lo, hi, true};
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t') out += c;
  return out;
}

Reference ref(std::string quantity, double value, std::string tag, double tol, std::string note = {},
              bool discrepancy = false) {
  return {std::move(quantity), value, std::move(tag), tol, std::move(note), discrepancy};
}

/// Hyperspherical embedding of S^n: x_k = sin φ_1 ... sin φ_{k-1} cos φ_k.
auto sphere_embedding(int n) {
  return [n](auto x) {
    using S = typename decltype(x)::value_type;
    using std::cos;
    using std::sin;
    std::vector<S> r(static_cast<std::size_t>(n + 1));
    S prod(1);
    for (int k = 0; k < n; ++k) {
      r[k] = prod * cos(x[k]);
      prod = prod * sin(x[k]);
    }
    r[n] = prod;
    return r;
  };
}

double sphere_dv(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  double v = 1;
  for (int k = 0; k < n - 1; ++k) v *= std::pow(std::sin(x[k]), n - 1 - k);
  return v;
}

/// Jets of u at (x1, x2): (u_1, u_2, u_11, u_22, u_12).
struct UDerivs {
  double u1, u2, u11, u22, u12;
};

UDerivs u_derivs(const Expr& u, std::span<const double> x) {
  const ScalarField f = [u](std::span<const Jet<double>> xs) { return u.eval<Jet<double>>(xs); };
  const SecondJet j = second_jet(f, x.first(2));
  return {j.gradient[0], j.gradient[1], j.hessian(0, 0), j.hessian(1, 1), j.hessian(0, 1)};
}

}  // namespace

ManifoldSpec s2_chart() {
  ManifoldSpec m;
  m.name = "s2";
  m.dim = 2;
  m.description = "unit 2-sphere, chart (theta, phi) with g = diag(1, sin^2 theta)";
  m.grid.axes = {gl_axis(17, 0, kPi), periodic_axis(33)};
  m.metric = MetricField::closed_form(2, [](auto x) {
    using S = typename decltype(x)::value_type;
    using std::sin;
    Mat<S> g(2, 2);
    g(0, 0) = S(1);
    g(1, 1) = sin(x[0]) * sin(x[0]);
    return g;
  });
  m.kd_oracle = [](std::span<const double>) { return 1.0 / (2 * kPi); };
  m.gbc_oracle = m.kd_oracle;
  m.gauss_oracle = [](std::span<const double>) { return 1.0; };
  m.dv_oracle = [](std::span<const double> x) { return std::sin(x[0]); };
  m.sectional_oracle = [](std::span<const double>) { return Mat<double>{{0, 1}, {1, 0}}; };
  m.references = {ref("gamma_d", 2, "paper", 1e-6), ref("gbc_total", 2, "derived", 1e-6),
                  ref("volume", 4 * kPi, "paper", 1e-6), ref("hilbert", 8 * kPi, "derived", 1e-6)};
  return m;
}

ManifoldSpec round_sphere(int n) {
  if (n < 2 || n > 7) throw Error(ErrorCode::kConfig, "sphere dimension must be between 2 and 7");
  ManifoldSpec m;
  m.name = "s" + std::to_string(n);
  m.dim = n;
  m.description = "unit " + std::to_string(n) + "-sphere, hyperspherical embedding in R^" + std::to_string(n + 1);
  const int gl = n <= 4 ? 17 : 9;
  const int per = n <= 3 ? 33 : (n == 4 ? 17 : 9);
  for (int k = 0; k < n - 1; ++k) m.grid.axes.push_back(gl_axis(gl, 0, kPi));
  m.grid.axes.push_back(periodic_axis(per));
  m.metric = MetricField::induced(EmbeddingMap::from(n, n + 1, sphere_embedding(n)));
  m.dv_oracle = sphere_dv;
  m.sectional_oracle = [n](std::span<const double>) {
    Mat<double> k(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) k(i, j) = i == j ? 0.0 : 1.0;
    return k;
  };
  // |S^n| = 2 pi^{(n+1)/2} / Γ((n+1)/2)
  const double volume = 2 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
  m.references.push_back(ref("volume", volume, n == 4 ? "paper" : "derived", 1e-6));
  m.references.push_back(ref("hilbert", n * (n - 1) * volume, "derived", 1e-3));
  if (n % 2 == 0) {
    const int d = n / 2;
    const double kd = static_cast<double>(factorial(n)) * c_d(d);
    m.kd_oracle = [kd](std::span<const double>) { return kd; };
    m.gbc_oracle = m.kd_oracle;
    m.references.push_back(ref("gamma_d", 2, "paper", n == 6 ? 2e-2 : 1e-3));
    m.references.push_back(ref("gbc_total", 2, "paper", n == 6 ? 2e-2 : 1e-3));
    m.references.push_back(ref("gamma", 2, "trivial", n == 6 ? 2e-2 : 2e-3));
    if (n == 4)
      m.references.push_back(ref("curvature_constant", 3.0 / 8.0 / (kPi * kPi), "paper", 1e-12,
                                 "printed (3/8)/pi^2 contradicts its own chi = 2 check; the permutation sum gives "
                                 "3/(4 pi^2)",
                                 true));
  }
  return m;
}

namespace {

ManifoldSpec ellipsoid4_impl(const std::vector<double>& ax, std::string name) {
  ManifoldSpec m;
  m.name = std::move(name);
  m.dim = 4;
  m.grid.axes = {gl_axis(17, 0, kPi), gl_axis(17, 0, kPi), gl_axis(17, 0, kPi), periodic_axis(17)};
  auto r = [ax](auto x) {
    using S = typename decltype(x)::value_type;
    using std::cos;
    using std::sin;
    const S st = sin(x[0]), ss = sin(x[1]), su = sin(x[2]);
    return std::vector<S>{S(ax[0]) * cos(x[0]), S(ax[1]) * cos(x[1]) * st, S(ax[2]) * ss * st * cos(x[2]),
                          S(ax[3]) * ss * st * su * cos(x[3]), S(ax[4]) * ss * st * su * sin(x[3])};
  };
  m.metric = MetricField::induced(EmbeddingMap::from(4, 5, r));
  m.params["axes"] = ax;
  return m;
}

}  // namespace

ManifoldSpec ellipsoid4(double a) {
  if (!(a > 0)) throw Error(ErrorCode::kConfig, "ellipsoid axis must be positive");
  ManifoldSpec m = ellipsoid4_impl({a, 1, 1, 1, 1}, "ellipsoid4");
  m.description = "4-ellipsoid of revolution r = [a cos t, cos s sin t, ...], chart (t, s, u, v)";
  m.params = {{"a", a}};
  const double c2 = c_d(2);
  // B/2 = cos^2 t + a^2 sin^2 t
  m.kd_oracle = [a, c2](std::span<const double> x) {
    const double b = 1 + a * a + (1 - a * a) * std::cos(2 * x[0]);
    return 24 * c2 * 8 * std::pow(a, 4) / (b * b * b);
  };
  m.dv_oracle = [a](std::span<const double> x) {
    const double b = 1 + a * a + (1 - a * a) * std::cos(2 * x[0]);
    const double st = std::sin(x[0]), ss = std::sin(x[1]);
    return ss * ss * st * st * st * std::sin(x[2]) * std::sqrt(b / 2);
  };
  // coordinate directions are principal, so K_d is C_d (2d)! times the
  // Gauss-Kronecker curvature and integrates to 2 for every a
  m.references = {ref("gamma_d", 2, "derived", 1e-3), ref("gbc_total", 2, "derived", 1e-3)};
  return m;
}

ManifoldSpec ellipsoid4_general(const std::vector<double>& axes) {
  if (axes.size() != 5) throw Error(ErrorCode::kConfig, "general 4-ellipsoid needs 5 semi-axes");
  for (double v : axes)
    if (!(v > 0)) throw Error(ErrorCode::kConfig, "ellipsoid axes must be positive");
  ManifoldSpec m = ellipsoid4_impl(axes, "ellipsoid4_general");
  m.description = "general 4-ellipsoid, semi-axes (a, b, c, d, e); smoke-test scale only";
  for (auto& axis : m.grid.axes) axis.nodes = 5;
  m.references = {ref("gbc_total", 2, "derived", 0.5, "coarse 5^4 grid; only finiteness is asserted")};
  return m;
}

ManifoldSpec ellipsoid2(double a, double b, double c) {
  if (!(a > 0 && b > 0 && c > 0)) throw Error(ErrorCode::kConfig, "ellipsoid axes must be positive");
  ManifoldSpec m;
  m.name = "ellipsoid2";
  m.dim = 2;
  m.description = "ellipsoid x^2/a^2 + y^2/b^2 + z^2/c^2 = 1, chart (theta, phi)";
  m.params = {{"a", a}, {"b", b}, {"c", c}};
  m.grid.axes = {periodic_axis(64), gl_axis(48, 0, kPi)};
  auto r = [a, b, c](auto x) {
    using S = typename decltype(x)::value_type;
    using std::cos;
    using std::sin;
    const S sp = sin(x[1]);
    return std::vector<S>{S(a) * sp * cos(x[0]), S(b) * sp * sin(x[0]), S(c) * cos(x[1])};
  };
  m.metric = MetricField::induced(EmbeddingMap::from(2, 3, r));
  m.gauss_oracle = [a, b, c](std::span<const double> x) {
    const double px = a * std::sin(x[1]) * std::cos(x[0]), py = b * std::sin(x[1]) * std::sin(x[0]),
                 pz = c * std::cos(x[1]);
    const double den = std::pow(a, 4) * std::pow(b, 4) * pz * pz + std::pow(a, 4) * std::pow(c, 4) * py * py +
                       std::pow(b, 4) * std::pow(c, 4) * px * px;
    return std::pow(a * b * c, 6) / (den * den);
  };
  m.kd_oracle = [g = m.gauss_oracle](std::span<const double> x) { return g(x) / (2 * kPi); };
  m.gbc_oracle = m.kd_oracle;
  m.dv_oracle = [a, b, c](std::span<const double> x) {
    const double sp = std::sin(x[1]), cp = std::cos(x[1]), st = std::sin(x[0]), ct = std::cos(x[0]);
    return std::sqrt(c * c * std::pow(sp, 4) * (a * a * st * st + b * b * ct * ct) + a * a * b * b * sp * sp * cp * cp);
  };
  m.references = {ref("gamma_d", 2, "paper", 1e-5, "the printed integral of K dV is read as gamma_d = (1/2pi) int K dV")};
  return m;
}

ManifoldSpec rp2() {
  ManifoldSpec m;
  m.name = "rp2";
  m.dim = 2;
  m.description = "real projective plane, Veronese-type embedding in R^6, chart (t, s)";
  m.grid.axes = {periodic_axis(33), gl_axis(17, 0, kPi / 2)};
  auto r = [](auto x) {
    using S = typename decltype(x)::value_type;
    using std::cos;
    using std::sin;
    const S st = sin(x[0]), ct = cos(x[0]), ss = sin(x[1]), cs = cos(x[1]);
    const S r2(std::sqrt(2.0));
    return std::vector<S>{ss * ss * ct * ct, ss * ss * st * st, cs * cs, r2 * ss * cs * st, r2 * ss * cs * ct,
                          r2 * ss * ss * st * ct};
  };
  m.metric = MetricField::induced(EmbeddingMap::from(2, 6, r));
  m.gauss_oracle = [](std::span<const double>) { return 0.5; };
  m.kd_oracle = [](std::span<const double>) { return 0.5 / (2 * kPi); };
  m.gbc_oracle = m.kd_oracle;
  m.dv_oracle = [](std::span<const double> x) { return 2 * std::sin(x[1]); };
  m.references = {ref("volume", 4 * kPi, "paper", 1e-6), ref("gamma_d", 1, "paper", 1e-5),
                  ref("gamma", 1, "paper", 1e-5), ref("gauss_curvature", 0.5, "paper", 1e-8)};
  return m;
}

ManifoldSpec flat_torus(int n) {
  ManifoldSpec m;
  m.name = n == 1 ? "s1" : "flat" + std::to_string(n);
  m.dim = n;
  m.description = "flat torus R^" + std::to_string(n) + " / (2 pi Z)^" + std::to_string(n);
  for (int k = 0; k < n; ++k) m.grid.axes.push_back(periodic_axis(8));
  m.metric = MetricField::constant(Eigen::MatrixXd::Identity(n, n));
  m.dv_oracle = [](std::span<const double>) { return 1.0; };
  if (n % 2 == 0) {
    m.kd_oracle = [](std::span<const double>) { return 0.0; };
    m.gbc_oracle = m.kd_oracle;
    m.references = {ref("gamma_d", 0, "trivial", 1e-12), ref("gbc_total", 0, "trivial", 1e-12)};
  }
  m.references.push_back(ref("volume", std::pow(2 * kPi, n), "trivial", 1e-9));
  return m;
}

ManifoldSpec circle() { return flat_torus(1); }

ManifoldSpec taubes_torus(const std::string& u_text) {
  const Expr u = Expr::parse(u_text, 2);
  ManifoldSpec m;
  m.name = "taubes";
  m.dim = 4;
  m.params = {{"u", u_text}};
  m.description = "warped 4-torus g = dt^2 + ds^2 + exp(2u) dx^2 + exp(-2u) dy^2, u = u(t, s), chart (t, s, x, y)";
  m.grid.axes = {periodic_axis(32), periodic_axis(32), periodic_axis(4), periodic_axis(4)};
  m.metric = MetricField::closed_form(4, [u](auto x) {
    using S = typename decltype(x)::value_type;
    using std::exp;
    const S uu = u.eval<S>(x.first(2));
    Mat<S> g(4, 4);
    g(0, 0) = S(1);
    g(1, 1) = S(1);
    g(2, 2) = exp(S(2) * uu);
    g(3, 3) = exp(S(-2) * uu);
    return g;
  });
  const double inv = 1.0 / (2 * kPi * kPi);
  m.kd_oracle = [u, inv](std::span<const double> x) {
    const UDerivs d = u_derivs(u, x);
    return (d.u2 * d.u2 * d.u1 * d.u1 - d.u22 * d.u11) * inv;
  };
  m.gbc_oracle = [u, inv](std::span<const double> x) {
    const UDerivs d = u_derivs(u, x);
    return (d.u12 * d.u12 - d.u11 * d.u22) * inv;
  };
  m.dv_oracle = [](std::span<const double>) { return 1.0; };
  m.sectional_oracle = [u](std::span<const double> x) {
    const UDerivs d = u_derivs(u, x);
    const double t2 = d.u1 * d.u1, s2 = d.u2 * d.u2;
    Mat<double> k(4, 4);
    k(0, 2) = -t2 - d.u11;
    k(0, 3) = -t2 + d.u11;
    k(1, 2) = -s2 - d.u22;
    k(1, 3) = -s2 + d.u22;
    k(2, 3) = t2 + s2;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j) k(i, j) = k(j, i);
    return k;
  };
  const std::string canon = strip_spaces(u_text);
  const char* factor_note = "the displayed density 2(u_s^2 u_t^2 - u_ss u_tt) integrates to twice the printed value";
  if (canon == "cos(x1)+cos(x2)" || canon == "cos(x2)+cos(x1)") {
    m.references = {ref("gamma_d", 2 * kPi * kPi, "derived", 1e-8, "analytic integral of the displayed density"),
                    ref("gamma_d", kPi * kPi, "paper", 1e-6, factor_note, true)};
  } else if (canon == "cos(x1+x2)" || canon == "cos(x2+x1)") {
    m.references = {ref("gamma_d", -kPi * kPi, "derived", 1e-8, "analytic integral of the displayed density"),
                    ref("gamma_d", -kPi * kPi / 2, "paper", 1e-6, factor_note, true)};
  } else if (canon == "0") {
    m.references = {ref("gamma_d", 0, "trivial", 1e-12), ref("gbc_total", 0, "trivial", 1e-12)};
  }
  m.references.push_back(ref("volume", std::pow(2 * kPi, 4), "paper", 1e-6));
  return m;
}

ManifoldSpec extended_torus(const std::string& u_text, const std::string& v_text) {
  const Expr u = Expr::parse(u_text, 2), v = Expr::parse(v_text, 2);
  ManifoldSpec m;
  m.name = "taubes_ext";
  m.dim = 4;
  m.params = {{"u", u_text}, {"v", v_text}};
  m.description = "g = exp(2v) dt^2 + exp(-2v) ds^2 + exp(2u) dx^2 + exp(-2u) dy^2, u, v functions of (t, s)";
  m.grid.axes = {periodic_axis(32), periodic_axis(32), periodic_axis(4), periodic_axis(4)};
  m.metric = MetricField::closed_form(4, [u, v](auto x) {
    using S = typename decltype(x)::value_type;
    using std::exp;
    const S uu = u.eval<S>(x.first(2)), vv = v.eval<S>(x.first(2));
    Mat<S> g(4, 4);
    g(0, 0) = exp(S(2) * vv);
    g(1, 1) = exp(S(-2) * vv);
    g(2, 2) = exp(S(2) * uu);
    g(3, 3) = exp(S(-2) * uu);
    return g;
  });
  m.dv_oracle = [](std::span<const double>) { return 1.0; };
  m.references = {ref("volume", std::pow(2 * kPi, 4), "derived", 1e-6)};
  return m;
}

ManifoldSpec product(const ManifoldSpec& a, const ManifoldSpec& b) {
  if (!a.metric || !b.metric) throw Error(ErrorCode::kConfig, "products need chart-based factors");
  ManifoldSpec m;
  m.name = a.name + "x" + b.name;
  m.dim = a.dim + b.dim;
  m.description = "Riemannian product " + a.name + " x " + b.name + "; coordinate frame is product-aligned";
  m.params = {{"factors", {a.name, b.name}}, {"left", a.params}, {"right", b.params}};
  m.grid.axes = a.grid.axes;
  m.grid.axes.insert(m.grid.axes.end(), b.grid.axes.begin(), b.grid.axes.end());
  m.metric = MetricField::product(*a.metric, *b.metric);
  const auto na = static_cast<std::size_t>(a.dim);
  if (a.dv_oracle && b.dv_oracle)
    m.dv_oracle = [fa = a.dv_oracle, fb = b.dv_oracle, na](std::span<const double> x) {
      return fa(x.first(na)) * fb(x.subspan(na));
    };
  if (a.dim == 2 && b.dim == 2 && a.gauss_oracle && b.gauss_oracle) {
    // block sectional matrix diag(κ1, κ2): K_d = 8 κ1 κ2 C_2 = κ1 κ2 / (4 π^2)
    m.kd_oracle = [fa = a.gauss_oracle, fb = b.gauss_oracle, na](std::span<const double> x) {
      return fa(x.first(na)) * fb(x.subspan(na)) / (4 * kPi * kPi);
    };
    m.gbc_oracle = m.kd_oracle;
  }
  if ((a.dim % 2 == 1) && (b.dim % 2 == 1))
    m.kd_oracle = [](std::span<const double>) { return 0.0; };
  auto find = [](const ManifoldSpec& s, const std::string& q) -> const Reference* {
    for (const auto& r : s.references)
      if (r.quantity == q && !r.documented_discrepancy) return &r;
    return nullptr;
  };
  if (const Reference *ra = find(a, "volume"), *rb = find(b, "volume"); ra && rb)
    m.references.push_back(ref("volume", ra->value * rb->value, "derived", 1e-6));
  return m;
}

Eigen::MatrixXd complex_structure() {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
  // (a, b, c, d) -> (-b, a, -d, c)
  j(0, 1) = -1;
  j(1, 0) = 1;
  j(2, 3) = -1;
  j(3, 2) = 1;
  return j;
}

Mat<double> cp2_sectional(const Eigen::MatrixXd& t) {
  if (t.rows() != 4 || t.cols() != 4) throw Error(ErrorCode::kBadDimension, "CP^2 frames are 4 x 4");
  if ((t.transpose() * t - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() > kOrthonormalTol)
    throw Error(ErrorCode::kNonOrthonormalFrame, "CP^2 frame is not orthonormal");
  const Eigen::MatrixXd jt = complex_structure() * t;
  const Eigen::MatrixXd w = jt.transpose() * t;  // w(i, j) = <J t_i, t_j>
  Mat<double> k(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) k(i, j) = i == j ? 0.0 : 1 + 3 * w(i, j) * w(i, j);
  return k;
}

ManifoldSpec cp2() {
  ManifoldSpec m;
  m.name = "cp2";
  m.dim = 4;
  m.description = "complex projective plane, Fubini-Study metric with holomorphic curvature 4";
  Homogeneous h;
  h.volume = kPi * kPi / 2;
  h.exact_volume = std::make_pair(Rational(1, 2), 2);
  const Eigen::MatrixXd j = complex_structure();
  h.riemann = Tensor4<double>(4);
  const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          auto ip = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) { return x.dot(y); };
          const Eigen::VectorXd x = e.col(a), y = e.col(b), z = e.col(c), w = e.col(d);
          h.riemann(a, b, c, d) = ip(x, z) * ip(y, w) - ip(x, w) * ip(y, z) + ip(j * x, z) * ip(j * y, w) -
                                  ip(j * x, w) * ip(j * y, z) + 2 * ip(j * x, y) * ip(j * z, w);
        }
  h.sectional = cp2_sectional;
  m.homogeneous = std::move(h);
  m.references = {ref("permutation_sum", 144, "paper", 0), ref("gbc_total", 3, "derived", 1e-9),
                  ref("volume", kPi * kPi / 2, "paper", 1e-12)};
  return m;
}

ManifoldSpec lie_group(const LieAlgebra& g, double volume, const std::string& name,
                       std::optional<std::pair<Rational, int>> exact_volume) {
  ManifoldSpec m;
  m.name = name;
  m.dim = g.n;
  m.description = "compact Lie group with bi-invariant metric; " + g.metric_note;
  Homogeneous h;
  h.riemann = biinvariant_riemann(g);
  h.volume = volume;
  h.exact_volume = std::move(exact_volume);
  h.algebra = g;
  m.homogeneous = std::move(h);
  m.references = {ref("volume", volume, name == "su3" ? "paper" : "derived", 1e-12)};
  if (g.n % 2 == 0 && g.n <= 8) m.references.push_back(ref("gbc_total", 0, "derived", 1e-9));
  if (name == "su3") {
    m.references.push_back(ref("permutation_sum", 351.0 / 64.0, "paper", 0));
    m.references.push_back(ref("gamma_d", 117 * kPi / 131072.0, "paper", 1e-12));
  } else if (name == "so4") {
    m.references.push_back(ref("gamma_d", 0, "paper", 0));
  }
  return m;
}

ManifoldSpec klembeck() {
  ManifoldSpec m;
  m.name = "klembeck";
  m.dim = 6;
  m.description = "polynomial metric patch around the origin of R^6, coordinates (x, y, z, u, v, w)";
  const double r = 0.2;
  for (int k = 0; k < 6; ++k) m.grid.axes.push_back(gl_axis(5, -r, r));
  m.metric = MetricField::closed_form_exact(6, [](auto p) {
    using S = typename decltype(p)::value_type;
    const S &x = p[0], &y = p[1], &z = p[2], &u = p[3], &v = p[4], &w = p[5];
    const S one(1), two(2), three(3);
    Mat<S> g(6, 6);
    g(0, 0) = one - three * z * z;
    g(0, 1) = -two * u * z;
    g(0, 5) = two * v * y;
    g(1, 1) = one - three * u * u;
    g(1, 2) = two * u * x;
    g(2, 2) = one - three * v * v;
    g(2, 3) = -two * v * w;
    g(3, 3) = one - three * w * w;
    g(3, 4) = two * w * z;
    g(4, 4) = one - three * x * x;
    g(4, 5) = -two * x * y;
    g(5, 5) = one - three * y * y;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < i; ++j) g(i, j) = g(j, i);
    return g;
  });
  m.references = {ref("gbc_raw_origin", -9216, "derived", 0),
                  ref("gbc_paper_origin", -9216.0 / (720.0 * 720.0), "paper", 0,
                      "printed value is the raw double sum divided by ((2d)!)^2"),
                  ref("kd_origin", 0, "derived", 0,
                      "no perfect matching fits inside the two 3-cycles of the 0/3 pattern")};
  return m;
}

ManifoldSpec manifold_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("lie_algebra")) {
      ManifoldSpec m = lie_group(lie_algebra_from_json(j.at("lie_algebra")), j.at("volume").get<double>(),
                                 j.value("name", std::string("user")));
      m.params = {{"source", "spec-file"}};
      return m;
    }
    ManifoldSpec m;
    m.name = j.value("name", std::string("user"));
    m.dim = j.at("dim").get<int>();
    if (m.dim < 1 || m.dim > kMaxVars) throw Error(ErrorCode::kConfig, "dim must be between 1 and 8");
    const auto& dom = j.at("domain");
    if (static_cast<int>(dom.size()) != m.dim) throw Error(ErrorCode::kConfig, "domain needs one entry per dimension");
    auto bound = [](const nlohmann::json& b) {
      return b.is_string() ? eval_constant(b.get<std::string>()) : b.get<double>();
    };
    for (const auto& a : dom) {
      const bool periodic = a.value("periodic", false);
      GridAxis axis{a.value("nodes", periodic ? 33 : 17),
                    periodic ? QuadratureRule::kPeriodicTrapezoid : QuadratureRule::kGaussLegendre, bound(a.at("lo")),
                    bound(a.at("hi")), periodic};
      m.grid.axes.push_back(axis);
    }
    m.grid.validate();
    const auto& rows = j.at("metric");
    if (static_cast<int>(rows.size()) != m.dim) throw Error(ErrorCode::kConfig, "metric needs dim rows");
    std::vector<Expr> entries;
    bool rational = true;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != m.dim) throw Error(ErrorCode::kConfig, "metric rows need dim entries");
      for (const auto& e : row) {
        entries.push_back(e.is_string() ? Expr::parse(e.get<std::string>(), m.dim)
                                        : Expr::parse(e.dump(), m.dim));
        rational = rational && entries.back().is_rational();
      }
    }
    const int n = m.dim;
    auto f = [entries, n](auto x) {
      using S = typename decltype(x)::value_type;
      Mat<S> g(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g(a, b) = entries[static_cast<std::size_t>(a * n + b)].template eval<S>(x);
      return g;
    };
    m.metric = rational ? MetricField::closed_form_exact(n, f) : MetricField::closed_form(n, f);
    m.description = j.value("description", std::string("user-defined chart metric"));
    if (j.contains("references")) {
      for (const auto& r : j.at("references")) {
        if (!r.contains("tag") || r.at("tag").get<std::string>().empty())
          throw Error(ErrorCode::kConfig, "reference '" + r.value("quantity", std::string("?")) + "' has no provenance tag");
        m.references.push_back(ref(r.at("quantity").get<std::string>(), r.at("value").get<double>(),
                                   r.at("tag").get<std::string>(), r.value("tolerance", 1e-6),
                                   r.value("note", std::string()), r.value("documented_discrepancy", false)));
      }
    }
    m.params = {{"source", "spec-file"}};
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("malformed manifold spec: ") + e.what());
  }
}

namespace {

double param_double(const std::map<std::string, std::string>& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    return eval_constant(it->second);
  } catch (const Error&) {
    throw Error(ErrorCode::kConfig, "parameter " + key + " is not a number: " + it->second);
  }
}

std::string param_string(const std::map<std::string, std::string>& p, const std::string& key, std::string fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void allow_params(const std::map<std::string, std::string>& p, std::initializer_list<const char*> keys,
                  const std::string& name) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* key : keys) ok = ok || k == key;
    if (!ok) throw Error(ErrorCode::kConfig, "manifold " + name + " does not take parameter '" + k + "'");
  }
}

}  // namespace

ManifoldSpec make_manifold(const std::string& name, const std::map<std::string, std::string>& p) {
  try {
    if (name == "s2") {
      allow_params(p, {}, name);
      return s2_chart();
    }
    if (name == "sphere") {
      allow_params(p, {"n"}, name);
      return round_sphere(static_cast<int>(param_double(p, "n", 4)));
    }
    if (name == "s3" || name == "s4" || name == "s6") {
      allow_params(p, {}, name);
      return round_sphere(name[1] - '0');
    }
    if (name == "ellipsoid4") {
      allow_params(p, {"a"}, name);
      return ellipsoid4(param_double(p, "a", 2));
    }
    if (name == "ellipsoid4_general") {
      allow_params(p, {"axes"}, name);
      std::vector<double> axes;
      std::stringstream ss(param_string(p, "axes", "1,1.2,1.4,1.6,1.8"));
      for (std::string tok; std::getline(ss, tok, ',');) axes.push_back(eval_constant(tok));
      return ellipsoid4_general(axes);
    }
    if (name == "ellipsoid2" || name == "exe") {
      allow_params(p, {"a", "b", "c"}, name);
      ManifoldSpec e = ellipsoid2(param_double(p, "a", 1), param_double(p, "b", 2), param_double(p, "c", 3));
      if (name == "ellipsoid2") return e;
      for (auto& axis : e.grid.axes) axis.nodes = 24;
      ManifoldSpec m = product(e, e);
      m.name = "exe";
      m.references.push_back(ref("gamma_d", 4, "paper", 1e-3));
      return m;
    }
    if (name == "rp2") {
      allow_params(p, {}, name);
      return rp2();
    }
    if (name == "flat4" || name == "torus4") {
      allow_params(p, {}, name);
      return flat_torus(4);
    }
    if (name == "taubes") {
      allow_params(p, {"u"}, name);
      return taubes_torus(param_string(p, "u", "cos(x1)+cos(x2)"));
    }
    if (name == "taubes_ext") {
      allow_params(p, {"u", "v"}, name);
      return extended_torus(param_string(p, "u", "cos(x1)+cos(x2)"), param_string(p, "v", "sin(x1)"));
    }
    if (name == "s2xs2") {
      allow_params(p, {}, name);
      ManifoldSpec m = product(s2_chart(), s2_chart());
      m.name = "s2xs2";
      for (auto& axis : m.grid.axes) axis.nodes = axis.periodic ? 16 : 12;
      m.references.push_back(ref("gamma_d", 4, "paper", 1e-3));
      m.references.push_back(ref("gbc_total", 4, "derived", 1e-3));
      return m;
    }
    if (name == "s3xs1") {
      allow_params(p, {}, name);
      ManifoldSpec s3 = round_sphere(3);
      for (auto& axis : s3.grid.axes) axis.nodes = axis.periodic ? 16 : 12;
      ManifoldSpec m = product(s3, circle());
      m.name = "s3xs1";
      m.references.push_back(ref("gamma_d", 0, "paper", 1e-10));
      m.references.push_back(ref("gbc_total", 0, "derived", 1e-8));
      return m;
    }
    if (name == "cp2") {
      allow_params(p, {}, name);
      return cp2();
    }
    if (name == "su3") {
      allow_params(p, {}, name);
      return lie_group(su3(), std::pow(kPi, 5), "su3", std::make_pair(Rational(1), 5));
    }
    if (name == "so4") {
      allow_params(p, {}, name);
      return lie_group(so4(), 128 * std::pow(kPi, 4), "so4", std::make_pair(Rational(128), 4));
    }
    if (name == "klembeck") {
      allow_params(p, {}, name);
      return klembeck();
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw Error(ErrorCode::kConfig, e.what());
    throw;
  }
  throw Error(ErrorCode::kConfig, "unknown manifold '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> manifold_catalog() {
  return {
      {"s2", "unit 2-sphere, analytic chart"},
      {"s3", "unit 3-sphere (odd-dimensional factor)"},
      {"s4", "unit 4-sphere, embedding-induced"},
      {"s6", "unit 6-sphere, embedding-induced (9^6 grid)"},
      {"sphere", "unit n-sphere, parameter n"},
      {"ellipsoid4", "4-ellipsoid of revolution, parameter a"},
      {"ellipsoid4_general", "general 4-ellipsoid, parameter axes=a,b,c,d,e (5^4 smoke grid)"},
      {"ellipsoid2", "2-ellipsoid, parameters a, b, c"},
      {"exe", "product of two 2-ellipsoids, parameters a, b, c"},
      {"rp2", "real projective plane"},
      {"flat4", "flat 4-torus"},
      {"taubes", "warped 4-torus, parameter u (expression in x1, x2)"},
      {"taubes_ext", "doubly warped 4-torus, parameters u, v"},
      {"s2xs2", "product of two unit 2-spheres"},
      {"s3xs1", "product of the 3-sphere and a circle"},
      {"cp2", "complex projective plane, Fubini-Study"},
      {"so4", "SO(4) with bi-invariant metric"},
      {"su3", "SU(3) with bi-invariant metric"},
      {"klembeck", "6-dimensional polynomial metric patch"},
  };
}

}  // namespace curvfun

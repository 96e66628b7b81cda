#include "curvfun/liegroups.hpp"

#include <cmath>

#include "curvfun/error.hpp"
#include "curvfun/functionals.hpp"

namespace curvfun {

namespace {

double inner(const ComplexMatrix& a, const ComplexMatrix& b, double scale) {
  return scale * (a * b.adjoint()).trace().real();
}

ComplexMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

LieAlgebra structure_constants(const std::vector<ComplexMatrix>& basis, double scale, std::string name) {
  const int n = static_cast<int>(basis.size());
  if (n < 1) throw Error(ErrorCode::kConfig, "empty Lie algebra basis");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double want = i == j ? 1.0 : 0.0;
      if (std::fabs(inner(basis[i], basis[j], scale) - want) > 1e-10)
        throw Error(ErrorCode::kConfig, "Lie algebra basis is not orthonormal for the given inner product");
    }
  LieAlgebra g;
  g.name = std::move(name);
  g.n = n;
  g.alpha = Tensor3<double>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const ComplexMatrix c = basis[i] * basis[j] - basis[j] * basis[i];
      ComplexMatrix rest = c;
      for (int k = 0; k < n; ++k) {
        const double a = inner(c, basis[k], scale);
        g.alpha(i, j, k) = a;
        rest -= a * basis[k];
      }
      if (rest.norm() > 1e-10)
        throw Error(ErrorCode::kNotClosed, "commutator [e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) +
                                               "] leaves the span of the basis");
    }
  g.metric_note = "<A,B> = " + std::to_string(scale) + " Re tr(A B^*)";
  return g;
}

double jacobi_residual(const LieAlgebra& g) {
  // [[e_i,e_j],e_k] = Σ_m α_ijm α_mkl e_l
  double worst = 0;
  const int n = g.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int m = 0; m < n; ++m)
            s += g.alpha(i, j, m) * g.alpha(m, k, l) + g.alpha(j, k, m) * g.alpha(m, i, l) +
                 g.alpha(k, i, m) * g.alpha(m, j, l);
          worst = std::max(worst, std::fabs(s));
        }
  return worst;
}

double biinvariance_defect(const LieAlgebra& g) {
  double worst = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) worst = std::max(worst, std::fabs(g.alpha(i, j, k) + g.alpha(i, k, j)));
  return worst;
}

Mat<double> biinvariant_sectional(const LieAlgebra& g) {
  if (biinvariance_defect(g) > 1e-10)
    throw Error(ErrorCode::kNotBiInvariant, "structure constants are not totally antisymmetric");
  Mat<double> k(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      if (i == j) continue;
      double s = 0;
      for (int m = 0; m < g.n; ++m) s += g.alpha(i, j, m) * g.alpha(i, j, m);
      k(i, j) = 0.25 * s;
    }
  return k;
}

Mat<Rational> biinvariant_sectional_exact(const LieAlgebra& g) {
  const Mat<double> k = biinvariant_sectional(g);
  Mat<Rational> q(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) q(i, j) = rationalize(k(i, j));
  return q;
}

Tensor4<double> biinvariant_riemann(const LieAlgebra& g) {
  if (biinvariance_defect(g) > 1e-10)
    throw Error(ErrorCode::kNotBiInvariant, "structure constants are not totally antisymmetric");
  const int n = g.n;
  Tensor4<double> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int m = 0; m < n; ++m) s += g.alpha(i, j, m) * g.alpha(k, l, m);
          r(i, j, k, l) = 0.25 * s;
        }
  return r;
}

LieAlgebra rotate_basis(const LieAlgebra& g, const Eigen::MatrixXd& q) {
  const int n = g.n;
  if (q.rows() != n || q.cols() != n) throw Error(ErrorCode::kBadDimension, "rotation size does not match algebra");
  LieAlgebra out = g;
  // α'_ijk = Σ q_ai q_bj q_ck α_abc, contracted one index at a time
  Tensor3<double> t1(n), t2(n);
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = 0;
        for (int a = 0; a < n; ++a) s += q(a, i) * g.alpha(a, b, c);
        t1(i, b, c) = s;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c) {
        double s = 0;
        for (int b = 0; b < n; ++b) s += q(b, j) * t1(i, b, c);
        t2(i, j, c) = s;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int c = 0; c < n; ++c) s += q(c, k) * t2(i, j, c);
        out.alpha(i, j, k) = s;
      }
  return out;
}

double gamma_d_group(const LieAlgebra& g, double volume) { return k_discrete(biinvariant_sectional(g)) * volume; }

LieAlgebra su3() {
  using C = std::complex<double>;
  const C i(0, 1);
  const double r3 = 1.0 / std::sqrt(3.0);
  std::vector<ComplexMatrix> lambda(8, ComplexMatrix::Zero(3, 3));
  lambda[0](0, 1) = lambda[0](1, 0) = 1;
  lambda[1](0, 1) = -i;
  lambda[1](1, 0) = i;
  lambda[2](0, 0) = 1;
  lambda[2](1, 1) = -1;
  lambda[3](0, 2) = lambda[3](2, 0) = 1;
  lambda[4](0, 2) = -i;
  lambda[4](2, 0) = i;
  lambda[5](1, 2) = lambda[5](2, 1) = 1;
  lambda[6](1, 2) = -i;
  lambda[6](2, 1) = i;
  lambda[7](0, 0) = lambda[7](1, 1) = r3;
  lambda[7](2, 2) = -2 * r3;
  std::vector<ComplexMatrix> basis;
  for (const auto& l : lambda) basis.push_back(0.5 * i * l);
  // -2 tr(XY) equals 2 Re tr(X Y^*) on anti-Hermitian matrices
  LieAlgebra g = structure_constants(basis, 2.0, "su3");
  g.metric_note = "X_a = i lambda_a / 2, <X,Y> = -2 tr(XY)";
  return g;
}

LieAlgebra so4() {
  const double h = 0.5;
  std::vector<ComplexMatrix> basis{
      real_matrix({{0, 0, 0, -h}, {0, 0, -h, 0}, {0, h, 0, 0}, {h, 0, 0, 0}}),
      real_matrix({{0, 0, h, 0}, {0, 0, 0, -h}, {-h, 0, 0, 0}, {0, h, 0, 0}}),
      real_matrix({{0, -h, 0, 0}, {h, 0, 0, 0}, {0, 0, 0, -h}, {0, 0, h, 0}}),
      real_matrix({{0, 0, 0, h}, {0, 0, -h, 0}, {0, h, 0, 0}, {-h, 0, 0, 0}}),
      real_matrix({{0, 0, h, 0}, {0, 0, 0, h}, {-h, 0, 0, 0}, {0, -h, 0, 0}}),
      real_matrix({{0, -h, 0, 0}, {h, 0, 0, 0}, {0, 0, 0, h}, {0, 0, -h, 0}}),
  };
  LieAlgebra g = structure_constants(basis, 1.0, "so4");
  g.metric_note = "<A,B> = tr(A B^T)";
  return g;
}

LieAlgebra so3() {
  std::vector<ComplexMatrix> basis{
      real_matrix({{0, 0, 0}, {0, 0, -1}, {0, 1, 0}}),
      real_matrix({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}),
      real_matrix({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}),
  };
  LieAlgebra g = structure_constants(basis, 0.5, "so3");
  g.metric_note = "<A,B> = tr(A B^T) / 2";
  return g;
}

LieAlgebra lie_algebra_from_json(const nlohmann::json& j) {
  const std::string name = j.value("name", std::string("user"));
  if (j.contains("structure_constants")) {
    const auto& sc = j.at("structure_constants");
    const int n = static_cast<int>(sc.size());
    LieAlgebra g;
    g.name = name;
    g.n = n;
    g.alpha = Tensor3<double>(n);
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(sc[a].size()) != n) throw Error(ErrorCode::kConfig, "structure constants must be n x n x n");
      for (int b = 0; b < n; ++b) {
        if (static_cast<int>(sc[a][b].size()) != n)
          throw Error(ErrorCode::kConfig, "structure constants must be n x n x n");
        for (int c = 0; c < n; ++c) g.alpha(a, b, c) = sc[a][b][c].get<double>();
      }
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (std::fabs(g.alpha(a, b, c) + g.alpha(b, a, c)) > 1e-12)
            throw Error(ErrorCode::kConfig, "structure constants must be antisymmetric in the first two indices");
    g.metric_note = "structure constants given in an orthonormal basis";
    return g;
  }
  if (!j.contains("basis")) throw Error(ErrorCode::kConfig, "Lie algebra needs 'basis' or 'structure_constants'");
  std::vector<ComplexMatrix> basis;
  for (const auto& mj : j.at("basis")) {
    const auto rows = static_cast<Eigen::Index>(mj.size());
    ComplexMatrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (static_cast<Eigen::Index>(mj[r].size()) != rows) throw Error(ErrorCode::kConfig, "basis matrices must be square");
      for (Eigen::Index c = 0; c < rows; ++c) {
        const auto& e = mj[r][c];
        m(r, c) = e.is_array() ? std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>())
                               : std::complex<double>(e.get<double>(), 0.0);
      }
    }
    basis.push_back(m);
  }
  return structure_constants(basis, j.value("scale", 1.0), name);
}

}  // namespace curvfun

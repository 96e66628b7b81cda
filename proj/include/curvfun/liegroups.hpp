#pragma once

// Curvature of compact Lie groups with bi-invariant metrics. For
// left-invariant fields 4 R(X, Y, U, V) = g([X, Y], [U, V]), so in a
// metric-orthonormal basis R_ijkl = 1/4 Σ_m α_ijm α_klm and
// K_ij = 1/4 Σ_k α_ijk^2.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "curvfun/matrix.hpp"
#include "curvfun/rational.hpp"

namespace curvfun {

using ComplexMatrix = Eigen::MatrixXcd;

/// Lie algebra given by a metric-orthonormal basis; α(i, j, k) = <[e_i, e_j], e_k>.
struct LieAlgebra {
  std::string name;
  int n = 0;
  Tensor3<double> alpha;
  /// Inner product used to build alpha, for the record.
  std::string metric_note;
};

/// Structure constants of a basis of matrices under <A, B> = scale Re tr(A B^*).
/// Throws kNotClosed if a commutator leaves the span (residual > 1e-10) and
/// kConfig if the basis is not orthonormal for that inner product.
LieAlgebra structure_constants(const std::vector<ComplexMatrix>& basis, double scale, std::string name = {});

/// Largest |[[e_i,e_j],e_k] + cyclic| coefficient.
double jacobi_residual(const LieAlgebra& g);

/// Largest |α_ijk + α_ikj|: zero iff the metric is bi-invariant.
double biinvariance_defect(const LieAlgebra& g);

/// K_ij = 1/4 Σ_k α_ijk^2. Throws kNotBiInvariant if the defect exceeds 1e-10.
Mat<double> biinvariant_sectional(const LieAlgebra& g);
/// Same matrix with each entry recovered as an exact rational.
Mat<Rational> biinvariant_sectional_exact(const LieAlgebra& g);

/// R_ijkl = 1/4 Σ_m α_ijm α_klm in the orthonormal basis.
Tensor4<double> biinvariant_riemann(const LieAlgebra& g);

/// Conjugates the basis by an orthogonal matrix: e'_i = Σ_a q(a, i) e_a.
LieAlgebra rotate_basis(const LieAlgebra& g, const Eigen::MatrixXd& q);

/// k_discrete of the constant sectional matrix times the volume.
double gamma_d_group(const LieAlgebra& g, double volume);

/// Gell-Mann basis X_a = i λ_a / 2 with <X, Y> = -2 tr(XY).
LieAlgebra su3();
/// Six-matrix basis of so(4) adapted to so(3) + so(3), Frobenius inner product.
LieAlgebra so4();
/// so(3) with e_1 e_2 e_3 the standard rotation generators.
LieAlgebra so3();

/// Loads {"basis": [matrix...], "scale": c} where a matrix is a list of rows
/// and entries are numbers or [re, im] pairs, or {"structure_constants":
/// n x n x n nested list}.
LieAlgebra lie_algebra_from_json(const nlohmann::json& j);

}  // namespace curvfun

#pragma once

// Catalog of manifolds: chart domain, metric source, closed-form oracles and
// reference values with provenance.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "curvfun/expr.hpp"
#include "curvfun/liegroups.hpp"
#include "curvfun/quadrature.hpp"
#include "curvfun/tensor.hpp"

namespace curvfun {

/// A known value attached to a manifold. `tag` is one of "paper", "derived",
/// "trivial"; a reference with `documented_discrepancy` set records a
/// printed value the engine is known not to reproduce, and `note` says why.
struct Reference {
  std::string quantity;
  double value = 0;
  std::string tag;
  double tolerance = 0;
  std::string note;
  bool documented_discrepancy = false;
};

/// Curvature that is the same at every point, given in an orthonormal basis
/// (Lie groups with bi-invariant metrics, symmetric spaces).
struct Homogeneous {
  Tensor4<double> riemann;
  double volume = 0;
  /// volume = coefficient * pi^power exactly, when known.
  std::optional<std::pair<Rational, int>> exact_volume;
  std::optional<LieAlgebra> algebra;
  /// Optional direct sectional formula K(frame); used by CP^2.
  std::function<Mat<double>(const Eigen::MatrixXd&)> sectional;
};

using PointOracle = std::function<double(std::span<const double>)>;
using MatrixOracle = std::function<Mat<double>(std::span<const double>)>;

struct ManifoldSpec {
  std::string name;
  int dim = 0;
  /// Chart domain and default quadrature grid.
  GridSpec grid;
  std::optional<MetricField> metric;
  std::optional<Homogeneous> homogeneous;

  PointOracle kd_oracle;         // K_d in the coordinate frame
  PointOracle gbc_oracle;        // normalised K_GBC
  PointOracle dv_oracle;         // sqrt(det g)
  PointOracle gauss_oracle;      // Gaussian curvature (surfaces)
  MatrixOracle sectional_oracle;  // sectional matrix in the coordinate frame

  std::vector<Reference> references;
  nlohmann::json params = nlohmann::json::object();
  std::string description;

  bool chart_based() const { return metric.has_value(); }
};

// Constructors. All angles in radians; Gauss-Legendre axes exclude the
// chart poles because nodes are interior.
ManifoldSpec s2_chart();
ManifoldSpec round_sphere(int n);
ManifoldSpec ellipsoid4(double a);
ManifoldSpec ellipsoid4_general(const std::vector<double>& axes);
ManifoldSpec ellipsoid2(double a, double b, double c);
ManifoldSpec rp2();
ManifoldSpec flat_torus(int n);
ManifoldSpec circle();
ManifoldSpec taubes_torus(const std::string& u);
ManifoldSpec extended_torus(const std::string& u, const std::string& v);
ManifoldSpec product(const ManifoldSpec& a, const ManifoldSpec& b);
ManifoldSpec cp2();
ManifoldSpec lie_group(const LieAlgebra& g, double volume, const std::string& name,
                       std::optional<std::pair<Rational, int>> exact_volume = std::nullopt);
ManifoldSpec klembeck();

/// CP^2 sectional matrix 1 + 3 <J t_i, t_j>^2 for an orthonormal frame of
/// C^2 = R^4 with coordinates (Re z1, Im z1, Re z2, Im z2). Throws
/// kNonOrthonormalFrame if the columns are not orthonormal to 1e-10.
Mat<double> cp2_sectional(const Eigen::MatrixXd& frame);
/// Complex structure J on R^4: J(a + bi, c + di) = (-b + ai, -d + ci).
Eigen::MatrixXd complex_structure();

/// User manifold from a declarative JSON spec:
/// {"name", "dim", "domain": [{"lo", "hi", "periodic", "nodes"}...],
///  "metric": [[expr...]...]}; bounds may be expression strings like "2*pi".
/// A spec with "lie_algebra" (see lie_algebra_from_json) and "volume" gives a
/// group with its bi-invariant metric instead.
ManifoldSpec manifold_from_json(const nlohmann::json& j);

/// Named lookup with parameters (e.g. u=..., a=...). Throws kConfig for
/// unknown names or parameters.
ManifoldSpec make_manifold(const std::string& name, const std::map<std::string, std::string>& params = {});

/// Names accepted by make_manifold, with one-line descriptions.
std::vector<std::pair<std::string, std::string>> manifold_catalog();

}  // namespace curvfun

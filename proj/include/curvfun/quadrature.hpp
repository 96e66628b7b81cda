#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace curvfun {

enum class QuadratureRule { kPeriodicTrapezoid, kGaussLegendre };

struct GridAxis {
  int nodes = 17;
  QuadratureRule rule = QuadratureRule::kGaussLegendre;
  double lo = 0;
  double hi = 1;
  bool periodic = false;
};

/// Tensor-product grid. Invariants: nodes >= 4 on every axis; periodic axes
/// use the periodic trapezoid rule (nodes at cell midpoints).
struct GridSpec {
  std::vector<GridAxis> axes;

  void validate() const;
  long total_points() const;
  /// Same grid with half the nodes per axis (at least 2).
  GridSpec halved() const;
  nlohmann::json describe() const;
};

/// Nodes and weights of one axis.
std::pair<std::vector<double>, std::vector<double>> axis_rule(const GridAxis& axis);

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Fixed-order pairwise summation.
double pairwise_sum(std::span<const double> values);

/// Integrand returning (density * dV, Monte Carlo standard error of that
/// product). `index` is the canonical row-major node index.
struct NodeValue {
  double value = 0;
  double std_error = 0;
};
using Integrand = std::function<NodeValue(std::span<const double> x, std::uint64_t index)>;

struct IntegralResult {
  double value = 0;
  double error_estimate = 0;
  long n_points = 0;
  double wall_time = 0;
  double mc_std_error = 0;
  double coarse_value = 0;
  nlohmann::json metadata;
};

/// Raw tensor-product quadrature on one grid, without the halving estimate.
/// Nodes are dealt round-robin to `workers` threads; node values are stored by
/// canonical index and reduced pairwise, so the result does not depend on the
/// worker count. A node whose evaluation throws is reported as
/// kChartSingularity with its coordinates.
IntegralResult quadrature(const GridSpec& grid, const Integrand& f, int workers);

/// quadrature() plus the grid-halving error estimate |I(grid) - I(grid/2)|,
/// combined in quadrature sum with the Monte Carlo error.
IntegralResult integrate(const GridSpec& grid, const Integrand& f, int workers);

/// sqrt(det g) via Cholesky; throws kSingularMetric if g is not SPD.
double volume_element(const Eigen::MatrixXd& g);

}  // namespace curvfun

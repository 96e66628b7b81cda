#include "curvfun/quadrature.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "curvfun/error.hpp"

namespace curvfun {

void GridSpec::validate() const {
  if (axes.empty()) throw Error(ErrorCode::kConfig, "grid has no axes");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const GridAxis& a = axes[i];
    if (a.nodes < 4) throw Error(ErrorCode::kConfig, "axis " + std::to_string(i) + " needs at least 4 nodes");
    if (!(a.hi > a.lo)) throw Error(ErrorCode::kConfig, "axis " + std::to_string(i) + " has an empty range");
    if (a.periodic && a.rule != QuadratureRule::kPeriodicTrapezoid)
      throw Error(ErrorCode::kConfig, "periodic axis " + std::to_string(i) + " must use the periodic trapezoid rule");
  }
}

long GridSpec::total_points() const {
  long n = 1;
  for (const auto& a : axes) n *= a.nodes;
  return n;
}

GridSpec GridSpec::halved() const {
  GridSpec h = *this;
  for (auto& a : h.axes) a.nodes = std::max(2, a.nodes / 2);
  return h;
}

nlohmann::json GridSpec::describe() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& a : axes) {
    j.push_back({{"nodes", a.nodes},
                 {"rule", a.rule == QuadratureRule::kPeriodicTrapezoid ? "periodic-trapezoid" : "gauss-legendre"},
                 {"lo", a.lo},
                 {"hi", a.hi},
                 {"periodic", a.periodic}});
  }
  return j;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged root for the weight
    double p0 = 1, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1 - z * z) * dp * dp);
  }
  return {x, w};
}

std::pair<std::vector<double>, std::vector<double>> axis_rule(const GridAxis& axis) {
  const int n = axis.nodes;
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  if (axis.rule == QuadratureRule::kPeriodicTrapezoid) {
    const double h = (axis.hi - axis.lo) / n;
    for (int i = 0; i < n; ++i) {
      x[i] = axis.lo + (i + 0.5) * h;
      w[i] = h;
    }
    return {x, w};
  }
  auto [gx, gw] = gauss_legendre(n);
  const double mid = 0.5 * (axis.lo + axis.hi), half = 0.5 * (axis.hi - axis.lo);
  for (int i = 0; i < n; ++i) {
    x[i] = mid + half * gx[i];
    w[i] = half * gw[i];
  }
  return {x, w};
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0;
    for (double e : v) s += e;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

IntegralResult quadrature(const GridSpec& grid, const Integrand& f, int workers) {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& a : grid.axes)
    if (a.nodes < 1) throw Error(ErrorCode::kConfig, "axis without nodes");
  const std::size_t dim = grid.axes.size();
  std::vector<std::vector<double>> xs(dim), ws(dim);
  for (std::size_t a = 0; a < dim; ++a) std::tie(xs[a], ws[a]) = axis_rule(grid.axes[a]);
  const long total = grid.total_points();
  std::vector<double> values(static_cast<std::size_t>(total)), variances(static_cast<std::size_t>(total));
  if (workers < 1) workers = 1;
  if (workers > total) workers = static_cast<int>(total);

  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
  std::vector<long> failed_at(static_cast<std::size_t>(workers), -1);
  auto run = [&](int w) {
    std::vector<double> x(dim);
    for (long idx = w; idx < total; idx += workers) {
      long rem = idx;
      double weight = 1;
      for (std::size_t a = dim; a-- > 0;) {
        const long n = grid.axes[a].nodes;
        const long i = rem % n;
        rem /= n;
        x[a] = xs[a][static_cast<std::size_t>(i)];
        weight *= ws[a][static_cast<std::size_t>(i)];
      }
      try {
        const NodeValue nv = f(x, static_cast<std::uint64_t>(idx));
        values[static_cast<std::size_t>(idx)] = weight * nv.value;
        variances[static_cast<std::size_t>(idx)] = weight * weight * nv.std_error * nv.std_error;
      } catch (...) {
        failures[static_cast<std::size_t>(w)] = std::current_exception();
        failed_at[static_cast<std::size_t>(w)] = idx;
        return;
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  // report the failure with the smallest node index so errors are reproducible
  long first = -1;
  std::size_t first_worker = 0;
  for (std::size_t w = 0; w < failures.size(); ++w)
    if (failures[w] && (first < 0 || failed_at[w] < first)) {
      first = failed_at[w];
      first_worker = w;
    }
  if (first >= 0) {
    std::vector<double> x(dim);
    long rem = first;
    for (std::size_t a = dim; a-- > 0;) {
      const long n = grid.axes[a].nodes;
      x[a] = xs[a][static_cast<std::size_t>(rem % n)];
      rem /= n;
    }
    try {
      std::rethrow_exception(failures[first_worker]);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kChartSingularity, std::string("node evaluation failed: ") + e.what(), x);
    }
  }
  IntegralResult r;
  r.value = pairwise_sum(values);
  r.mc_std_error = std::sqrt(pairwise_sum(variances));
  r.n_points = total;
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

IntegralResult integrate(const GridSpec& grid, const Integrand& f, int workers) {
  grid.validate();
  const auto start = std::chrono::steady_clock::now();
  IntegralResult fine = quadrature(grid, f, workers);
  const IntegralResult coarse = quadrature(grid.halved(), f, workers);
  fine.coarse_value = coarse.value;
  const double quad_err = std::fabs(fine.value - coarse.value);
  fine.error_estimate = std::sqrt(quad_err * quad_err + fine.mc_std_error * fine.mc_std_error);
  fine.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return fine;
}

double volume_element(const Eigen::MatrixXd& g) {
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::kSingularMetric, "metric is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  double v = 1;
  for (Eigen::Index i = 0; i < l.rows(); ++i) v *= l(i, i);
  return v;
}

}  // namespace curvfun

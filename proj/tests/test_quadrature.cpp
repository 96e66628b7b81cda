#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curvfun/error.hpp"
#include "curvfun/quadrature.hpp"

using namespace curvfun;

namespace {

constexpr double kPi = std::numbers::pi;

GridAxis gl(int n, double lo, double hi) { return {n, QuadratureRule::kGaussLegendre, lo, hi, false}; }
GridAxis per(int n) { return {n, QuadratureRule::kPeriodicTrapezoid, 0, 2 * kPi, true}; }

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {4, 7, 12}) {
      const auto [x, w] = gauss_legendre(n);
      for (int p = 0; p < 2 * n; ++p) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], p);
        const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
        CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1));
      }
    }
  }

  TEST_CASE("periodic trapezoid converges spectrally") {
    GridSpec g{{per(16)}};
    const auto r = quadrature(g, [](std::span<const double> x, std::uint64_t) {
      return NodeValue{std::exp(std::cos(x[0])), 0};
    }, 1);
    // ∫_0^{2π} e^{cos t} dt = 2π I_0(1)
    CHECK(r.value == doctest::Approx(2 * kPi * std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-14));
  }

  TEST_CASE("grid validation") {
    CHECK_THROWS_AS((GridSpec{{gl(3, 0, 1)}}.validate()), Error);
    CHECK_THROWS_AS((GridSpec{{gl(5, 1, 0)}}.validate()), Error);
    CHECK_THROWS_AS((GridSpec{{GridAxis{8, QuadratureRule::kGaussLegendre, 0, 1, true}}}.validate()), Error);
    CHECK_NOTHROW((GridSpec{{gl(5, 0, 1), per(8)}}.validate()));
    CHECK(GridSpec{{gl(5, 0, 1), per(8)}}.total_points() == 40);
    CHECK(GridSpec{{gl(5, 0, 1), per(8)}}.halved().axes[1].nodes == 4);
  }

  TEST_CASE("result does not depend on the worker count") {
    GridSpec g{{gl(9, 0, 1), per(12), gl(7, -1, 2)}};
    const Integrand f = [](std::span<const double> x, std::uint64_t i) {
      return NodeValue{std::sin(x[0] * x[2]) + std::cos(3 * x[1]) + 1e-9 * static_cast<double>(i % 7), 0};
    };
    const double one = quadrature(g, f, 1).value;
    for (int w : {2, 3, 8}) CHECK(quadrature(g, f, w).value == one);
  }

  TEST_CASE("integrate reports a halving error estimate") {
    GridSpec g{{gl(8, 0, 1)}};
    const auto r = integrate(g, [](std::span<const double> x, std::uint64_t) { return NodeValue{std::exp(x[0]), 0}; }, 1);
    CHECK(r.value == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
    CHECK(r.error_estimate < 1e-6);
    CHECK(r.n_points == 8);
  }

  TEST_CASE("failing nodes carry their coordinates") {
    GridSpec g{{gl(4, -1, 1)}};
    try {
      (void)quadrature(g, [](std::span<const double> x, std::uint64_t) -> NodeValue {
        if (x[0] > 0) throw Error(ErrorCode::kSingularMetric, "boom");
        return {1, 0};
      }, 2);
      FAIL("expected kChartSingularity");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kChartSingularity);
      REQUIRE(e.point().size() == 1);
      CHECK(e.point()[0] > 0);
    }
  }

  TEST_CASE("volume element") {
    Eigen::MatrixXd g(2, 2);
    g << 4, 0, 0, 9;
    CHECK(volume_element(g) == doctest::Approx(6));
    g(1, 1) = -1;
    CHECK_THROWS_AS(volume_element(g), Error);
  }

  TEST_CASE("pairwise sum is exact on integers") {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    CHECK(pairwise_sum(v) == 499500.0);
  }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "curvfun/error.hpp"
#include "curvfun/tensor.hpp"
#include "curvfun/zoo.hpp"

using namespace curvfun;

namespace {

// Random polynomial metric I + eps * symmetric polynomial perturbation.
MetricField random_metric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::vector<double> c(static_cast<std::size_t>(n * n * 3));
  for (auto& v : c) v = u(rng);
  return MetricField::closed_form(n, [n, c](auto x) {
    using S = typename decltype(x)::value_type;
    using std::sin;
    Mat<S> g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const std::size_t k = static_cast<std::size_t>(3 * (i * n + j));
        S e = S(c[k]) * x[i] * x[j] + S(c[k + 1]) * sin(x[(i + j) % n]) + S(c[k + 2]) * x[j] * x[j] * x[i];
        g(i, j) = (i == j ? S(2) : S(0)) + S(0.2) * e;
        g(j, i) = g(i, j);
      }
    return g;
  });
}

std::vector<double> random_point(int n, std::mt19937_64& rng, double lo = -0.5, double hi = 0.5) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace

TEST_SUITE("tensor") {
  TEST_CASE("second jet of a polynomial") {
    const ScalarField f = [](std::span<const Jet<double>> x) { return x[0] * x[0] * x[1] + x[1]; };
    const std::vector<double> p{2.0, 3.0};
    const SecondJet j = second_jet(f, p);
    CHECK(j.value == doctest::Approx(15));
    CHECK(j.gradient[0] == doctest::Approx(12));
    CHECK(j.gradient[1] == doctest::Approx(5));
    CHECK(j.hessian(0, 0) == doctest::Approx(6));
    CHECK(j.hessian(0, 1) == doctest::Approx(4));
    CHECK(j.hessian(1, 1) == doctest::Approx(0));
  }

  TEST_CASE("second jet rejects non-finite values") {
    const ScalarField f = [](std::span<const Jet<double>> x) { return sqrt(x[0]); };
    const std::vector<double> p{-1.0};
    CHECK_THROWS_AS(second_jet(f, p), Error);
  }

  TEST_CASE("hyper-dual Christoffels agree with finite differences") {
    std::mt19937_64 rng(11);
    for (int n : {2, 3, 4}) {
      const MetricField g = random_metric(n, 100 + static_cast<std::uint64_t>(n));
      for (int t = 0; t < 10; ++t) {
        const auto x = random_point(n, rng);
        const Tensor3<double> a = christoffel(g, x), b = christoffel_fd(g, x);
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(a(k, i, j) == doctest::Approx(b(k, i, j)).epsilon(1e-5).scale(1));
      }
    }
  }

  TEST_CASE("Riemann symmetries hold at random points") {
    std::mt19937_64 rng(12);
    for (int n : {2, 3, 4, 5}) {
      const MetricField g = random_metric(n, 200 + static_cast<std::uint64_t>(n));
      for (int t = 0; t < 5; ++t) CHECK(symmetry_defect(riemann(g, random_point(n, rng))) < 1e-10);
    }
  }

  TEST_CASE("unit sphere has sectional curvature one") {
    const ManifoldSpec s2 = s2_chart();
    const std::vector<double> x{1.1, 0.4};
    const auto c = curvature_at(*s2.metric, x, coordinate_frame(s2.metric->value(x)));
    CHECK(c.sectional(0, 1) == doctest::Approx(1).epsilon(1e-12));
    CHECK(sectional(c, 0, 1) == doctest::Approx(1).epsilon(1e-12));
    CHECK_THROWS_AS(sectional(c, 0, 0), Error);

    const ManifoldSpec s4 = round_sphere(4);
    const std::vector<double> y{0.9, 1.3, 2.0, 0.5};
    const auto c4 = curvature_at(*s4.metric, y, coordinate_frame(s4.metric->value(y)));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) CHECK(c4.sectional(i, j) == doctest::Approx(1).epsilon(1e-10));
  }

  TEST_CASE("embedding-induced metric matches the closed form") {
    const ManifoldSpec s2 = round_sphere(2);
    const std::vector<double> x{0.7, 2.1};
    const Eigen::MatrixXd g = s2.metric->value(x);
    CHECK(g(0, 0) == doctest::Approx(1));
    CHECK(g(1, 1) == doctest::Approx(std::sin(0.7) * std::sin(0.7)));
    CHECK(std::fabs(g(0, 1)) < 1e-14);
    CHECK(s2.metric->provenance() == MetricProvenance::kEmbedding);
  }

  TEST_CASE("degenerate chart and singular metric are reported") {
    const ManifoldSpec s2 = round_sphere(2);
    const std::vector<double> pole{0.0, 1.0};
    CHECK_THROWS_AS(s2.metric->value(pole), Error);
    const MetricField bad = MetricField::closed_form(2, [](auto x) {
      using S = typename decltype(x)::value_type;
      Mat<S> g(2, 2);
      g(0, 0) = x[0];
      g(1, 1) = S(1);
      return g;
    });
    const std::vector<double> p{-1.0, 0.0};
    try {
      (void)bad.value(p);
      FAIL("expected kSingularMetric");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSingularMetric);
    }
  }

  TEST_CASE("flat metrics have zero curvature") {
    const MetricField g = MetricField::constant(Eigen::MatrixXd::Identity(4, 4) * 2.0);
    const std::vector<double> x{0.1, 0.2, 0.3, 0.4};
    const Tensor4<double> r = riemann(g, x);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) CHECK(r(a, b, c, d) == 0.0);
  }

  TEST_CASE("exact Riemann agrees with the double path") {
    const ManifoldSpec k = klembeck();
    const std::vector<Rational> xq{Rational(1, 10), Rational(-1, 20), Rational(1, 30), 0, Rational(1, 15), Rational(-1, 10)};
    std::vector<double> xd;
    for (const auto& q : xq) xd.push_back(q.get_d());
    const Tensor4<Rational> rq = riemann_exact(*k.metric, xq);
    const Tensor4<double> rd = riemann(*k.metric, xd);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        for (int c = 0; c < 6; ++c)
          for (int d = 0; d < 6; ++d) CHECK(rd(a, b, c, d) == doctest::Approx(rq(a, b, c, d).get_d()).epsilon(1e-9).scale(1));
  }

  TEST_CASE("product metric is block diagonal") {
    const ManifoldSpec s2 = s2_chart();
    const MetricField p = MetricField::product(*s2.metric, *s2.metric);
    const std::vector<double> x{0.5, 1.0, 1.2, 2.0};
    const Eigen::MatrixXd g = p.value(x);
    CHECK(g(1, 1) == doctest::Approx(std::sin(0.5) * std::sin(0.5)));
    CHECK(g(3, 3) == doctest::Approx(std::sin(1.2) * std::sin(1.2)));
    CHECK(g(0, 2) == 0.0);
    const auto c = curvature_at(p, x, coordinate_frame(g));
    CHECK(c.sectional(0, 1) == doctest::Approx(1));
    CHECK(c.sectional(2, 3) == doctest::Approx(1));
    CHECK(std::fabs(c.sectional(0, 2)) < 1e-12);
  }

  TEST_CASE("to_frame is invariant under frame choice for sectional of a constant curvature space") {
    const ManifoldSpec s4 = round_sphere(4);
    const std::vector<double> x{0.9, 1.3, 2.0, 0.5};
    RandomStream rng(5);
    const Eigen::MatrixXd g = s4.metric->value(x);
    const Frame f = haar_frame(g, rng);
    const auto c = curvature_at(*s4.metric, x, f);
    CHECK(c.sectional(1, 3) == doctest::Approx(1).epsilon(1e-10));
  }
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curvfun/error.hpp"
#include "curvfun/functionals.hpp"

using namespace curvfun;

namespace {

constexpr double kPi = std::numbers::pi;

Mat<double> random_sectional(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  Mat<double> k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) k(i, j) = k(j, i) = u(rng);
  return k;
}

// Kulkarni-Nomizu product A ∧ B of symmetric matrices: an algebraic
// curvature tensor.
Tensor4<double> random_curvature(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  auto sym = [&] {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
    return a;
  };
  Tensor4<double> r(n);
  for (int term = 0; term < 2; ++term) {
    const Eigen::MatrixXd a = sym(), b = sym();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            r(i, j, k, l) += a(i, k) * b(j, l) + a(j, l) * b(i, k) - a(i, l) * b(j, k) - a(j, k) * b(i, l);
  }
  return r;
}

Tensor4<double> sphere_tensor(int n) {
  Tensor4<double> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) r(i, j, k, l) = (i == k && j == l) - (i == l && j == k);
  return r;
}

bool close_rel(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_SUITE("functionals") {
  TEST_CASE("constants") {
    CHECK(c_d(1) == doctest::Approx(1 / (4 * kPi)));
    CHECK(c_d(2) == doctest::Approx(1 / (2 * 16 * kPi * kPi)));
    CHECK(c_d(4) == doctest::Approx(1 / (6144 * std::pow(kPi, 4))));
    CHECK(factorial(6) == 720);
    CHECK(PairingTable::get(4).pairings().size() == 3);
    CHECK(PairingTable::get(8).pairings().size() == 105);
    CHECK(PairingTable::get(6).multiplicity() == 48);
  }

  TEST_CASE("matching reduction equals the brute-force permutation sum") {
    std::mt19937_64 rng(1);
    for (int n : {4, 6, 8}) {
      for (int t = 0; t < 100; ++t) {
        const Mat<double> k = random_sectional(n, rng);
        const double brute = brute_force_perm_sum(k);
        CHECK(close_rel(permutation_sum(k), brute, 1e-10));
        CHECK(close_rel(k_discrete(k), c_d(n / 2) * brute, 1e-10));
      }
    }
  }

  TEST_CASE("GBC reduction equals the brute-force double sum") {
    std::mt19937_64 rng(2);
    for (int n : {4, 6}) {
      for (int t = 0; t < 100; ++t) {
        const Tensor4<double> r = random_curvature(n, rng);
        const double brute = brute_force_gbc_sum(r);
        const GbcValue v = k_gbc(r);
        CHECK(close_rel(v.raw, brute, 1e-10));
        CHECK(close_rel(v.normalized, std::ldexp(c_d(n / 2), -n / 2) * brute, 1e-10));
      }
    }
  }

  TEST_CASE("unit spheres") {
    // K_GBC of S^2d integrates to 2, so its density is 2 / |S^2d|
    CHECK(k_gbc(sphere_tensor(2)).normalized == doctest::Approx(2 / (4 * kPi)));
    CHECK(k_gbc(sphere_tensor(4)).normalized == doctest::Approx(3 / (4 * kPi * kPi)));
    CHECK(k_gbc(sphere_tensor(4)).raw == doctest::Approx(96));
    Mat<double> ones(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) ones(i, j) = i != j;
    CHECK(k_discrete(ones) == doctest::Approx(3 / (4 * kPi * kPi)));
    CHECK(scalar_curvature(ones) == doctest::Approx(12));
  }

  TEST_CASE("flat tensors give zero") {
    CHECK(k_gbc(Tensor4<double>(4)).normalized == 0.0);
    CHECK(k_discrete(Mat<double>(6, 6)) == 0.0);
  }

  TEST_CASE("odd or oversized dimensions are rejected") {
    CHECK_THROWS_AS(k_discrete(Mat<double>(3, 3)), Error);
    CHECK_THROWS_AS(k_discrete(Mat<double>(10, 10)), Error);
    CHECK_THROWS_AS(k_gbc(Tensor4<double>(5)), Error);
  }

  TEST_CASE("exact sums over rationals") {
    Mat<Rational> k(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) k(i, j) = i == j ? 0 : 1;
    k(0, 1) = k(1, 0) = k(2, 3) = k(3, 2) = 4;
    CHECK(matching_sum(k) == 18);
    CHECK(permutation_sum(k) == 144);
  }

  TEST_CASE("Haar estimate is exact for constant curvature") {
    PointCurvature pc{Eigen::MatrixXd::Identity(4, 4), sphere_tensor(4)};
    RandomStream rng(4);
    const FunctionalValue v = k_haar_estimate(pc, 50, rng);
    CHECK(v.value == doctest::Approx(3 / (4 * kPi * kPi)));
    CHECK(v.std_error < 1e-12);
    CHECK(v.n_samples == 50);
    CHECK_THROWS_AS(k_haar_estimate(pc, 1, rng), Error);
  }
}

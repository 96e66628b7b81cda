#include <doctest.h>

#include <complex>

#include "curvfun/error.hpp"
#include "curvfun/functionals.hpp"
#include "curvfun/liegroups.hpp"
#include "curvfun/reproduce.hpp"

using namespace curvfun;

TEST_SUITE("liegroups") {
  TEST_CASE("su(3) in the Gell-Mann basis") {
    const LieAlgebra g = su3();
    CHECK(g.n == 8);
    CHECK(jacobi_residual(g) < 1e-12);
    CHECK(biinvariance_defect(g) < 1e-12);
    const Mat<Rational> k = biinvariant_sectional_exact(g);
    const auto& printed = su3_printed_sectional();
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) CHECK(k(i, j) == Rational(printed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    CHECK(permutation_sum(k) == Rational(351, 64));
    CHECK(matching_sum(k) == Rational(117, 8192));
  }

  TEST_CASE("so(4) aligned with so(3) + so(3) has zero K_d") {
    const LieAlgebra g = so4();
    CHECK(g.n == 6);
    CHECK(biinvariance_defect(g) < 1e-12);
    CHECK(matching_sum(biinvariant_sectional_exact(g)) == 0);
    CHECK(k_discrete(biinvariant_sectional(g)) == 0.0);
  }

  TEST_CASE("so(3) is the round 3-sphere up to scale") {
    const Mat<double> k = biinvariant_sectional(so3());
    CHECK(k(0, 1) == doctest::Approx(k(1, 2)));
    CHECK(k(0, 1) > 0);
  }

  TEST_CASE("rotating the basis preserves bi-invariance but changes K_d") {
    RandomStream rng(3);
    const Eigen::MatrixXd q = haar_orthogonal(8, rng);
    const LieAlgebra r = rotate_basis(su3(), q);
    CHECK(biinvariance_defect(r) < 1e-10);
    const double base = k_discrete(biinvariant_sectional(su3()));
    CHECK(std::fabs(k_discrete(biinvariant_sectional(r)) - base) > 1e-9);
  }

  TEST_CASE("riemann tensor agrees with the sectional formula") {
    const LieAlgebra g = su3();
    const Tensor4<double> r = biinvariant_riemann(g);
    const Mat<double> k = biinvariant_sectional(g);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) CHECK(r(i, j, i, j) == doctest::Approx(k(i, j)).scale(1));
  }

  TEST_CASE("non-closed bases and non-orthonormal bases are rejected") {
    using C = std::complex<double>;
    ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Zero(2, 2);
    a(0, 1) = C(1, 0);
    a(1, 0) = C(-1, 0);
    b(0, 1) = C(0, 1);
    b(1, 0) = C(0, 1);
    // [a, b] is diagonal and outside span{a, b}
    try {
      (void)structure_constants({a / std::sqrt(2.0), b / std::sqrt(2.0)}, 1.0);
      FAIL("expected kNotClosed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotClosed);
    }
    CHECK_THROWS_AS(structure_constants({a, a}, 1.0), Error);
  }

  TEST_CASE("non-bi-invariant structure constants are rejected") {
    LieAlgebra g;
    g.n = 2;
    g.alpha = Tensor3<double>(2);
    // [e1, e2] = e2: the ax+b algebra, no bi-invariant metric
    g.alpha(0, 1, 1) = 1;
    g.alpha(1, 0, 1) = -1;
    CHECK(biinvariance_defect(g) > 0.5);
    try {
      (void)biinvariant_sectional(g);
      FAIL("expected kNotBiInvariant");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotBiInvariant);
    }
  }

  TEST_CASE("JSON loading") {
    nlohmann::json j = {{"scale", 0.5},
                        {"basis",
                         {{{0, 0, 0}, {0, 0, -1}, {0, 1, 0}},
                          {{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}},
                          {{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}}}};
    const LieAlgebra g = lie_algebra_from_json(j);
    CHECK(g.n == 3);
    CHECK(biinvariant_sectional(g)(0, 1) == doctest::Approx(biinvariant_sectional(so3())(0, 1)));
    nlohmann::json sc = {{"structure_constants", nlohmann::json::array()}};
    CHECK_THROWS_AS(lie_algebra_from_json(nlohmann::json{{"nothing", 1}}), Error);
  }
}

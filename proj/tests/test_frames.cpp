#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curvfun/error.hpp"
#include "curvfun/frames.hpp"

using namespace curvfun;

namespace {

Eigen::MatrixXd spd(int n, std::uint64_t seed) {
  RandomStream rng(seed);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  return a * a.transpose() + Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST_SUITE("frames") {
  TEST_CASE("coordinate frame is orthonormal for the metric") {
    for (int n = 2; n <= 8; ++n) {
      const Eigen::MatrixXd g = spd(n, static_cast<std::uint64_t>(n));
      const Frame f = coordinate_frame(g);
      CHECK(f.orthonormality_defect(g) < kOrthonormalTol);
      // Gram-Schmidt in ascending order: t_1 is parallel to e_1
      CHECK(std::fabs(f.vector(0)(1)) == 0.0);
    }
  }

  TEST_CASE("haar frames are orthonormal and reproducible") {
    const Eigen::MatrixXd g = spd(4, 9);
    RandomStream a = RandomStream::substream(42, 3), b = RandomStream::substream(42, 3);
    const Frame fa = haar_frame(g, a), fb = haar_frame(g, b);
    CHECK(fa.orthonormality_defect(g) < kOrthonormalTol);
    CHECK((fa.vectors() - fb.vectors()).norm() == 0.0);
    RandomStream c = RandomStream::substream(42, 4);
    CHECK((haar_frame(g, c).vectors() - fa.vectors()).norm() > 1e-6);
  }

  TEST_CASE("haar orthogonal matrices have mean-zero entries") {
    RandomStream rng(1);
    double mean = 0, second = 0;
    const int n = 4, trials = 4000;
    for (int t = 0; t < trials; ++t) {
      const Eigen::MatrixXd q = haar_orthogonal(n, rng);
      CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
      mean += q(0, 0);
      second += q(0, 0) * q(0, 0);
    }
    CHECK(std::fabs(mean / trials) < 0.05);
    // E[q_11^2] = 1/n for Haar measure
    CHECK(second / trials == doctest::Approx(0.25).epsilon(0.05));
  }

  TEST_CASE("givens rotation") {
    const Eigen::MatrixXd q = givens(4, 0, 2, std::numbers::pi / 2);
    CHECK(q(0, 0) == doctest::Approx(0).scale(1));
    CHECK(q(2, 0) == doctest::Approx(1));
    CHECK(q(0, 2) == doctest::Approx(-1));
    CHECK(q(1, 1) == 1.0);
    const Frame f(Eigen::MatrixXd::Identity(4, 4));
    const Frame r = rotate_frame(f, 0, 2, std::numbers::pi / 2);
    CHECK((r.vectors() - q).norm() < 1e-15);
  }

  TEST_CASE("frame strategies") {
    const Eigen::MatrixXd g = spd(3, 3);
    const FrameStrategy c = FrameStrategy::coordinate();
    CHECK(c.kind() == FrameStrategy::Kind::kCoordinate);
    CHECK(c.describe().at("kind") == "coordinate");
    const FrameStrategy r = FrameStrategy::rotated(givens(3, 0, 1, 0.3));
    CHECK(r.frame_at(g, nullptr).orthonormality_defect(g) < kOrthonormalTol);
    CHECK(r.describe().at("kind") == "rotated");
    const FrameStrategy h = FrameStrategy::haar();
    RandomStream rng(3);
    CHECK(h.frame_at(g, &rng).orthonormality_defect(g) < kOrthonormalTol);
    CHECK_THROWS_AS(FrameStrategy::rotated(Eigen::MatrixXd::Ones(3, 3)), Error);
  }

  TEST_CASE("rank-deficient seeds are rejected") {
    Eigen::MatrixXd seed = Eigen::MatrixXd::Identity(3, 3);
    seed.col(2) = seed.col(0);
    try {
      (void)gram_schmidt_frame(Eigen::MatrixXd::Identity(3, 3), seed);
      FAIL("expected kRankDeficient");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRankDeficient);
    }
  }

  TEST_CASE("substreams are independent of draw order") {
    RandomStream a = RandomStream::substream(7, 10);
    const double first = a.normal();
    RandomStream b = RandomStream::substream(7, 11);
    (void)b.normal();
    RandomStream c = RandomStream::substream(7, 10);
    CHECK(c.normal() == first);
    CHECK(splitmix64(1) != splitmix64(2));
  }
}

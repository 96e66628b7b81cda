#include "curvfun/frames.hpp"

#include <cmath>

#include "curvfun/error.hpp"

namespace curvfun {

double Frame::orthonormality_defect(const Eigen::MatrixXd& g) const {
  const Eigen::MatrixXd gram = t_.transpose() * g * t_;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

namespace {

Eigen::MatrixXd orthonormalize_pass(const Eigen::MatrixXd& g, const Eigen::MatrixXd& seed) {
  const auto n = seed.cols();
  Eigen::MatrixXd t(seed.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd v = seed.col(k);
    // modified Gram-Schmidt in the g inner product
    for (Eigen::Index j = 0; j < k; ++j) v -= (t.col(j).dot(g * v)) * t.col(j);
    const double norm2 = v.dot(g * v);
    if (!(norm2 > 1e-20))
      throw Error(ErrorCode::kRankDeficient, "seed vector " + std::to_string(k) + " is dependent on its predecessors");
    t.col(k) = v / std::sqrt(norm2);
  }
  return t;
}

}  // namespace

Frame gram_schmidt_frame(const Eigen::MatrixXd& g, const Eigen::MatrixXd& seed) {
  if (g.rows() != g.cols() || seed.rows() != g.rows() || seed.cols() != g.rows())
    throw Error(ErrorCode::kBadDimension, "metric and seed basis sizes differ");
  Frame f(orthonormalize_pass(g, seed));
  if (f.orthonormality_defect(g) <= kOrthonormalTol) return f;
  f = Frame(orthonormalize_pass(g, f.vectors()));
  if (f.orthonormality_defect(g) > kOrthonormalTol)
    throw Error(ErrorCode::kRankDeficient, "frame fails orthonormality after re-orthonormalisation");
  return f;
}

Frame coordinate_frame(const Eigen::MatrixXd& g) {
  return gram_schmidt_frame(g, Eigen::MatrixXd::Identity(g.rows(), g.cols()));
}

Eigen::MatrixXd givens(int n, int a, int b, double angle) {
  if (a == b || a < 0 || b < 0 || a >= n || b >= n)
    throw Error(ErrorCode::kDegeneratePlane, "rotation plane needs two distinct axes in range");
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  const double c = std::cos(angle), s = std::sin(angle);
  q(a, a) = c;
  q(b, a) = s;
  q(a, b) = -s;
  q(b, b) = c;
  return q;
}

Frame rotate_frame(const Frame& f, int a, int b, double angle) {
  return Frame(f.vectors() * givens(f.dim(), a, b, angle));
}

Eigen::MatrixXd haar_orthogonal(int n, RandomStream& rng) {
  Eigen::MatrixXd z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Frame haar_frame(const Eigen::MatrixXd& g, RandomStream& rng) {
  const Frame base = coordinate_frame(g);
  return Frame(base.vectors() * haar_orthogonal(static_cast<int>(g.rows()), rng));
}

FrameStrategy FrameStrategy::rotated(Eigen::MatrixXd q) {
  const auto n = q.rows();
  if (q.cols() != n || (q.transpose() * q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::kNonOrthonormalFrame, "rotation matrix is not orthogonal");
  return FrameStrategy(Kind::kRotated, std::move(q));
}

Frame FrameStrategy::frame_at(const Eigen::MatrixXd& g, RandomStream* rng) const {
  switch (kind_) {
    case Kind::kCoordinate:
      return coordinate_frame(g);
    case Kind::kRotated:
      if (q_.rows() != g.rows()) throw Error(ErrorCode::kBadDimension, "rotation size does not match the metric");
      return Frame(coordinate_frame(g).vectors() * q_);
    case Kind::kHaar:
      if (rng == nullptr) throw Error(ErrorCode::kConfig, "haar frames need a random stream");
      return haar_frame(g, *rng);
  }
  return coordinate_frame(g);
}

std::string FrameStrategy::name() const {
  switch (kind_) {
    case Kind::kCoordinate:
      return "coordinate";
    case Kind::kRotated:
      return "rotated";
    case Kind::kHaar:
      return "haar";
  }
  return "coordinate";
}

nlohmann::json FrameStrategy::describe() const {
  nlohmann::json j;
  j["kind"] = name();
  if (kind_ == Kind::kRotated) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < q_.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index k = 0; k < q_.cols(); ++k) row.push_back(q_(i, k));
      rows.push_back(row);
    }
    j["rotation"] = rows;
  }
  return j;
}

}  // namespace curvfun

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

namespace curvfun {

inline constexpr double kOrthonormalTol = 1e-10;

/// Orthonormal tangent frame at a point. Column i holds t_i in chart
/// coordinates; t_i^T g t_j = δ_ij.
class Frame {
 public:
  Frame() = default;
  explicit Frame(Eigen::MatrixXd vectors) : t_(std::move(vectors)) {}

  int dim() const { return static_cast<int>(t_.cols()); }
  const Eigen::MatrixXd& vectors() const { return t_; }
  Eigen::VectorXd vector(int i) const { return t_.col(i); }

  /// Largest entry of |T^T g T - I|.
  double orthonormality_defect(const Eigen::MatrixXd& g) const;

 private:
  Eigen::MatrixXd t_;
};

/// Deterministic random stream. Sub-streams are derived from (seed, index)
/// by a SplitMix64 finaliser so that parallel workers draw independent,
/// assignment-independent sequences.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  static RandomStream substream(std::uint64_t seed, std::uint64_t index);

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::uint64_t next() { return engine_(); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Metric Gram-Schmidt on the seed columns in ascending index order. The
/// result is re-orthonormalised once if the first pass misses the tolerance;
/// a second miss, or a projected norm below 1e-10, throws kRankDeficient.
Frame gram_schmidt_frame(const Eigen::MatrixXd& g, const Eigen::MatrixXd& seed);

/// Gram-Schmidt of the chart basis e_1..e_n.
Frame coordinate_frame(const Eigen::MatrixXd& g);

/// Givens rotation by `angle` in the (t_a, t_b) plane:
/// t_a -> cos t_a + sin t_b, t_b -> -sin t_a + cos t_b.
Frame rotate_frame(const Frame& f, int a, int b, double angle);

/// Haar-distributed orthogonal matrix: QR of a standard Gaussian matrix with
/// the diagonal of R made positive.
Eigen::MatrixXd haar_orthogonal(int n, RandomStream& rng);

/// Coordinate frame of g post-multiplied by a Haar orthogonal matrix.
Frame haar_frame(const Eigen::MatrixXd& g, RandomStream& rng);

/// Givens rotation matrix acting on columns a and b.
Eigen::MatrixXd givens(int n, int a, int b, double angle);

class FrameStrategy {
 public:
  enum class Kind { kCoordinate, kRotated, kHaar };

  static FrameStrategy coordinate() { return FrameStrategy(Kind::kCoordinate, {}); }
  static FrameStrategy rotated(Eigen::MatrixXd q);
  static FrameStrategy haar() { return FrameStrategy(Kind::kHaar, {}); }

  Kind kind() const { return kind_; }
  const Eigen::MatrixXd& rotation() const { return q_; }

  /// Frame at a point with metric g. Only kHaar consumes `rng`.
  Frame frame_at(const Eigen::MatrixXd& g, RandomStream* rng) const;

  std::string name() const;
  nlohmann::json describe() const;

 private:
  FrameStrategy(Kind kind, Eigen::MatrixXd q) : kind_(kind), q_(std::move(q)) {}
  Kind kind_;
  Eigen::MatrixXd q_;
};

}  // namespace curvfun

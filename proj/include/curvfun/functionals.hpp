#pragma once

// Pointwise curvature functionals of a sectional matrix or Riemann tensor in
// an orthonormal frame.
//
// Normalisations (recorded in every emitted record):
//   K_d(x)    = C_d Σ_{σ ∈ S_2d} Π_k K_{σ(2k-1) σ(2k)},   C_d = 1 / (d! (4π)^d)
//   K(x)      = (2d)! C_d E_Haar[Π_k K_{t_{2k-1} t_{2k}}] = E_Haar[K_d]
//   K_GBC(x)  = 2^{-d} C_d Σ_{σ,π} sgn σ sgn π Π_k R_{π(2k-1) π(2k) σ(2k-1) σ(2k)}
// With these, the unit 2d-sphere has γ_d = γ = ∫ K_GBC = 2.

#include <algorithm>
#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "curvfun/error.hpp"
#include "curvfun/frames.hpp"
#include "curvfun/matrix.hpp"
#include "curvfun/rational.hpp"

namespace curvfun {

inline constexpr const char* kKdNormalization = "K_d = C_d * sum over S_2d, C_d = 1/(d!(4pi)^d)";
inline constexpr const char* kHaarNormalization = "K = (2d)! C_d E_Haar[prod] = E_Haar[K_d]";
inline constexpr const char* kGbcNormalization = "K_GBC = 2^-d C_d * signed double permutation sum";
inline constexpr const char* kScalarNormalization = "K_Scal = sum_{i != j} K_ij";

/// One perfect matching of {0..2d-1}: pairs (a < b), sorted by a, and the
/// sign of the permutation (a_1 b_1 a_2 b_2 ...).
struct Pairing {
  std::array<std::pair<int, int>, 4> pairs{};
  int sign = 1;
};

/// All (2d-1)!! perfect matchings of 2d indices, built once per dimension.
class PairingTable {
 public:
  static const PairingTable& get(int n);

  int n() const { return n_; }
  int d() const { return n_ / 2; }
  const std::vector<Pairing>& pairings() const { return pairings_; }
  /// Permutations per matching in the single sum: 2^d d!.
  long multiplicity() const;

 private:
  explicit PairingTable(int n);
  int n_;
  std::vector<Pairing> pairings_;
};

double c_d(int d);
long factorial(int k);

/// Σ over matchings of Π K_{pair}; exact for rational input.
template <class T>
T matching_sum(const Mat<T>& k) {
  const PairingTable& table = PairingTable::get(k.rows());
  T total(0);
  for (const Pairing& p : table.pairings()) {
    T prod(1);
    for (int q = 0; q < table.d(); ++q) prod *= k(p.pairs[q].first, p.pairs[q].second);
    total += prod;
  }
  return total;
}

/// Full permutation sum Σ_σ Π_k K_{σ(2k-1) σ(2k)} via the matching reduction.
template <class T>
T permutation_sum(const Mat<T>& k) {
  return T(PairingTable::get(k.rows()).multiplicity()) * matching_sum(k);
}

/// K_d(x) from a sectional matrix. Throws kBadDimension for odd or zero size,
/// or sizes above 8.
double k_discrete(const Mat<double>& k);

/// Raw signed double sum Σ_{σ,π} sgn σ sgn π Π_k R_{π(2k-1)π(2k)σ(2k-1)σ(2k)}.
/// Uses raw = 4^d d! Σ_{m1,m2} sgn(m1) sgn(m2) perm(R_{m1_k, m2_l}).
template <class T>
T gbc_raw_sum(const Tensor4<T>& r) {
  const PairingTable& table = PairingTable::get(r.dim());
  const int d = table.d();
  std::array<int, 4> tau{0, 1, 2, 3};
  std::vector<std::array<int, 4>> perms;
  do {
    perms.push_back(tau);
  } while (std::next_permutation(tau.begin(), tau.begin() + d));
  T total(0);
  for (const Pairing& a : table.pairings()) {
    for (const Pairing& b : table.pairings()) {
      T permanent(0);
      for (const auto& s : perms) {
        T prod(1);
        for (int q = 0; q < d; ++q) {
          const auto& pa = a.pairs[q];
          const auto& pb = b.pairs[s[q]];
          prod *= r(pa.first, pa.second, pb.first, pb.second);
          if (prod == T(0)) break;
        }
        permanent += prod;
      }
      if (a.sign * b.sign > 0)
        total += permanent;
      else
        total -= permanent;
    }
  }
  long mult = factorial(d);
  for (int q = 0; q < d; ++q) mult *= 4;
  return T(mult) * total;
}

struct GbcValue {
  double raw = 0;         // signed double permutation sum
  double normalized = 0;  // 2^-d C_d raw
};

/// K_GBC from R in an orthonormal frame.
GbcValue k_gbc(const Tensor4<double>& r);

double scalar_curvature(const Mat<double>& k);

/// Literal Σ over all (2d)! permutations, no reduction. 2d <= 8.
double brute_force_perm_sum(const Mat<double>& k);
/// Literal Σ over all pairs of permutations. 2d <= 6.
double brute_force_gbc_sum(const Tensor4<double>& r);

struct FunctionalValue {
  double value = 0;
  double std_error = 0;
  long n_samples = 1;
  std::string frame_strategy;
  std::string normalization;
  bool deterministic() const { return n_samples <= 1; }
};

/// Tangent-space curvature data at one point: the metric and R in the chart
/// basis. Frames are drawn against `metric`.
struct PointCurvature {
  Eigen::MatrixXd metric;
  Tensor4<double> riemann;
};

/// Monte Carlo mean of k_discrete over Haar frames. Throws kConfig if n < 2.
FunctionalValue k_haar_estimate(const PointCurvature& pc, long n, RandomStream& rng);

}  // namespace curvfun

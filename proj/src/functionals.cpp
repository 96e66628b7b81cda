#include "curvfun/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include "curvfun/tensor.hpp"

namespace curvfun {

namespace {

void build_matchings(std::vector<int>& rest, Pairing& current, int depth, std::vector<Pairing>& out) {
  if (rest.empty()) {
    // sign of the permutation (a1 b1 a2 b2 ...) by counting inversions
    std::vector<int> seq;
    for (int q = 0; q < depth; ++q) {
      seq.push_back(current.pairs[q].first);
      seq.push_back(current.pairs[q].second);
    }
    int inversions = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
      for (std::size_t j = i + 1; j < seq.size(); ++j)
        if (seq[i] > seq[j]) ++inversions;
    current.sign = inversions % 2 == 0 ? 1 : -1;
    out.push_back(current);
    return;
  }
  const int first = rest.front();
  for (std::size_t i = 1; i < rest.size(); ++i) {
    const int partner = rest[i];
    std::vector<int> next;
    for (std::size_t j = 1; j < rest.size(); ++j)
      if (j != i) next.push_back(rest[j]);
    current.pairs[depth] = {first, partner};
    build_matchings(next, current, depth + 1, out);
  }
}

void check_even_dim(int n) {
  if (n < 2 || n % 2 != 0 || n > 2 * 4)
    throw Error(ErrorCode::kBadDimension, "functional needs an even dimension between 2 and 8, got " + std::to_string(n));
}

}  // namespace

PairingTable::PairingTable(int n) : n_(n) {
  std::vector<int> rest(static_cast<std::size_t>(n));
  std::iota(rest.begin(), rest.end(), 0);
  Pairing current;
  build_matchings(rest, current, 0, pairings_);
}

const PairingTable& PairingTable::get(int n) {
  check_even_dim(n);
  static const std::array<PairingTable, 4> tables{PairingTable(2), PairingTable(4), PairingTable(6), PairingTable(8)};
  return tables[static_cast<std::size_t>(n / 2 - 1)];
}

long PairingTable::multiplicity() const { return (1L << d()) * factorial(d()); }

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double c_d(int d) { return 1.0 / (static_cast<double>(factorial(d)) * std::pow(4.0 * std::numbers::pi, d)); }

double k_discrete(const Mat<double>& k) {
  check_even_dim(k.rows());
  if (k.cols() != k.rows()) throw Error(ErrorCode::kBadDimension, "sectional matrix must be square");
  return c_d(k.rows() / 2) * permutation_sum(k);
}

GbcValue k_gbc(const Tensor4<double>& r) {
  check_even_dim(r.dim());
  const int d = r.dim() / 2;
  GbcValue v;
  v.raw = gbc_raw_sum(r);
  v.normalized = std::ldexp(c_d(d), -d) * v.raw;
  return v;
}

double scalar_curvature(const Mat<double>& k) {
  double s = 0;
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j)
      if (i != j) s += k(i, j);
  return s;
}

namespace {

int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

double brute_force_perm_sum(const Mat<double>& k) {
  check_even_dim(k.rows());
  const int n = k.rows();
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  double total = 0;
  do {
    double prod = 1;
    for (int q = 0; q < n; q += 2) prod *= k(p[q], p[q + 1]);
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

double brute_force_gbc_sum(const Tensor4<double>& r) {
  const int n = r.dim();
  if (n > 6) throw Error(ErrorCode::kBadDimension, "brute-force double sum is limited to 2d <= 6");
  check_even_dim(n);
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<int> signs;
  for (const auto& q : perms) signs.push_back(permutation_sign(q));
  double total = 0;
  for (std::size_t a = 0; a < perms.size(); ++a) {
    const auto& pi = perms[a];
    for (std::size_t b = 0; b < perms.size(); ++b) {
      const auto& sigma = perms[b];
      double prod = signs[a] * signs[b];
      for (int q = 0; q < n && prod != 0.0; q += 2) prod *= r(pi[q], pi[q + 1], sigma[q], sigma[q + 1]);
      total += prod;
    }
  }
  return total;
}

FunctionalValue k_haar_estimate(const PointCurvature& pc, long n, RandomStream& rng) {
  if (n < 2) throw Error(ErrorCode::kConfig, "Haar estimate needs at least two samples");
  // Welford accumulation keeps the variance stable for constant integrands.
  double mean = 0, m2 = 0;
  for (long s = 0; s < n; ++s) {
    const Frame f = haar_frame(pc.metric, rng);
    const double v = k_discrete(sectional_matrix(to_frame(pc.riemann, f.vectors())));
    const double delta = v - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (v - mean);
  }
  FunctionalValue out;
  out.value = mean;
  const double var = m2 / static_cast<double>(n - 1);
  out.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  out.n_samples = n;
  out.frame_strategy = "haar";
  out.normalization = kHaarNormalization;
  return out;
}

}  // namespace curvfun

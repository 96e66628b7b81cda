#pragma once

// Finite abstract simplicial complexes, Poincaré-Hopf indices and energized
// counting matrices, all in exact arithmetic.

#include <cstdint>
#include <random>
#include <vector>

#include <json.hpp>

#include "curvfun/rational.hpp"

namespace curvfun {

using Simplex = std::vector<int>;

struct Graph {
  int n = 0;
  std::vector<std::vector<bool>> adj;

  explicit Graph(int vertices = 0) : n(vertices), adj(static_cast<std::size_t>(vertices), std::vector<bool>(static_cast<std::size_t>(vertices))) {}
  void add_edge(int a, int b);
  bool has_edge(int a, int b) const { return adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  std::vector<int> neighbors(int v) const;

  static Graph cycle(int n);
  static Graph erdos_renyi(int n, double p, std::mt19937_64& rng);
};

/// Simplices sorted by dimension, then lexicographically; vertices sorted
/// inside each simplex.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Validates closure under nonempty subsets and absence of duplicates;
  /// throws kInvalidComplex otherwise.
  static SimplicialComplex from_simplices(std::vector<Simplex> simplices);
  /// Smallest complex containing the given sets.
  static SimplicialComplex closure_of(const std::vector<Simplex>& generators);
  /// Whitney (clique) complex of a graph; vertices 0..n-1.
  static SimplicialComplex whitney(const Graph& g);
  /// Whitney complex of the subgraph induced on `vertices`.
  static SimplicialComplex whitney(const Graph& g, const std::vector<int>& vertices);

  static SimplicialComplex from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::size_t size() const { return simplices_.size(); }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  /// Index of a simplex in canonical order, or -1.
  long index_of(const Simplex& s) const;

 private:
  std::vector<Simplex> simplices_;
};

/// (-1)^dim x.
int omega(const Simplex& x);
long euler_characteristic(const SimplicialComplex& c);

/// i_f(v) = 1 - χ(S_f^-(v)) where S_f^-(v) is the Whitney complex of the
/// neighbours y of v with f(y) < f(v). Throws kNotLocallyInjective if f
/// takes equal values on two adjacent vertices.
long ph_index(const Graph& g, const std::vector<double>& f, int v);

/// Index transported along F(x) = vertex of x with the largest f:
/// Σ_{x : F(x) = v} ω(x). Equals ph_index(g, f, v).
long transport_index(const Graph& g, const std::vector<double>& f, int v);
/// The same with F(x) = vertex of x with the smallest f.
long transport_index_min(const Graph& g, const std::vector<double>& f, int v);

/// L_h(x, y) = Σ_{z ⊆ x ∩ y, z ∈ G} h(z); h is indexed in canonical order.
Mat<Rational> counting_matrix(const SimplicialComplex& c, const std::vector<Rational>& h);
/// h(x) = ω(x).
std::vector<Rational> omega_energy(const SimplicialComplex& c);

/// Σ_{x,y} L_h^{-1}(x, y), exact. Throws kSingularL if L_h is singular.
Rational green_sum(const SimplicialComplex& c, const std::vector<Rational>& h);

/// Every nonempty complex on the vertex set {0..k-1}, k <= 4, that uses all
/// k vertices.
std::vector<SimplicialComplex> all_small_complexes(int max_vertices = 4);

/// Random complexes with at most max_simplices simplices: Whitney complexes
/// of Erdős-Rényi graphs (n <= 8, p in {0.3, 0.5, 0.7}) alternating with
/// draws from all_small_complexes.
std::vector<SimplicialComplex> random_complex_corpus(int count, std::size_t max_simplices, std::uint64_t seed);

}  // namespace curvfun

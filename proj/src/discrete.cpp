#include "curvfun/discrete.hpp"

#include <algorithm>
#include <set>

#include "curvfun/error.hpp"

namespace curvfun {

void Graph::add_edge(int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorCode::kInvalidComplex, "bad edge");
  adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
  adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (int w = 0; w < n; ++w)
    if (has_edge(v, w)) out.push_back(w);
  return out;
}

Graph Graph::cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph Graph::erdos_renyi(int n, double p, std::mt19937_64& rng) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b);
  return g;
}

namespace {

bool canonical_less(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void sort_canonical(std::vector<Simplex>& s) {
  for (auto& x : s) std::sort(x.begin(), x.end());
  std::sort(s.begin(), s.end(), canonical_less);
}

}  // namespace

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> simplices) {
  sort_canonical(simplices);
  std::set<Simplex> seen;
  for (const auto& x : simplices) {
    if (x.empty()) throw Error(ErrorCode::kInvalidComplex, "empty simplex");
    if (std::adjacent_find(x.begin(), x.end()) != x.end())
      throw Error(ErrorCode::kInvalidComplex, "simplex repeats a vertex");
    if (!seen.insert(x).second) throw Error(ErrorCode::kInvalidComplex, "duplicate simplex");
  }
  // closure: every facet of every simplex must be present
  for (const auto& x : simplices) {
    if (x.size() < 2) continue;
    for (std::size_t drop = 0; drop < x.size(); ++drop) {
      Simplex face;
      for (std::size_t k = 0; k < x.size(); ++k)
        if (k != drop) face.push_back(x[k]);
      if (!seen.count(face)) throw Error(ErrorCode::kInvalidComplex, "complex is not closed under taking faces");
    }
  }
  SimplicialComplex c;
  c.simplices_ = std::move(simplices);
  return c;
}

SimplicialComplex SimplicialComplex::closure_of(const std::vector<Simplex>& generators) {
  std::set<Simplex> all;
  for (Simplex g : generators) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    if (g.size() > 20) throw Error(ErrorCode::kInvalidComplex, "simplex too large");
    const unsigned full = 1u << g.size();
    for (unsigned mask = 1; mask < full; ++mask) {
      Simplex s;
      for (std::size_t k = 0; k < g.size(); ++k)
        if (mask & (1u << k)) s.push_back(g[k]);
      all.insert(s);
    }
  }
  return from_simplices(std::vector<Simplex>(all.begin(), all.end()));
}

SimplicialComplex SimplicialComplex::whitney(const Graph& g) {
  std::vector<int> all(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) all[static_cast<std::size_t>(i)] = i;
  return whitney(g, all);
}

SimplicialComplex SimplicialComplex::whitney(const Graph& g, const std::vector<int>& vertices) {
  // grow cliques one vertex at a time, always appending larger vertex ids
  std::vector<Simplex> out;
  std::vector<Simplex> layer;
  for (int v : vertices) layer.push_back({v});
  while (!layer.empty()) {
    out.insert(out.end(), layer.begin(), layer.end());
    std::vector<Simplex> next;
    for (const auto& s : layer)
      for (int v : vertices) {
        if (v <= s.back()) continue;
        bool ok = true;
        for (int w : s) ok = ok && g.has_edge(v, w);
        if (!ok) continue;
        Simplex t = s;
        t.push_back(v);
        next.push_back(t);
      }
    layer = std::move(next);
  }
  SimplicialComplex c;
  sort_canonical(out);
  c.simplices_ = std::move(out);
  return c;
}

SimplicialComplex SimplicialComplex::from_json(const nlohmann::json& j) {
  try {
    std::vector<Simplex> s;
    for (const auto& x : j) s.push_back(x.get<Simplex>());
    return from_simplices(std::move(s));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidComplex, std::string("complex must be a list of vertex lists: ") + e.what());
  }
}

nlohmann::json SimplicialComplex::to_json() const { return simplices_; }

long SimplicialComplex::index_of(const Simplex& s) const {
  Simplex t = s;
  std::sort(t.begin(), t.end());
  const auto it = std::lower_bound(simplices_.begin(), simplices_.end(), t, canonical_less);
  if (it == simplices_.end() || *it != t) return -1;
  return static_cast<long>(it - simplices_.begin());
}

int omega(const Simplex& x) { return x.size() % 2 == 1 ? 1 : -1; }

long euler_characteristic(const SimplicialComplex& c) {
  long chi = 0;
  for (const auto& x : c.simplices()) chi += omega(x);
  return chi;
}

namespace {

void check_locally_injective(const Graph& g, const std::vector<double>& f) {
  if (static_cast<int>(f.size()) != g.n) throw Error(ErrorCode::kConfig, "f needs one value per vertex");
  for (int a = 0; a < g.n; ++a)
    for (int b = a + 1; b < g.n; ++b)
      if (g.has_edge(a, b) && f[static_cast<std::size_t>(a)] == f[static_cast<std::size_t>(b)])
        throw Error(ErrorCode::kNotLocallyInjective,
                    "f agrees on adjacent vertices " + std::to_string(a) + " and " + std::to_string(b));
}

template <class Pick>
long transport(const Graph& g, const std::vector<double>& f, int v, Pick better) {
  check_locally_injective(g, f);
  long sum = 0;
  const SimplicialComplex c = SimplicialComplex::whitney(g);
  for (const auto& x : c.simplices()) {
    int best = x.front();
    for (int w : x)
      if (better(f[static_cast<std::size_t>(w)], f[static_cast<std::size_t>(best)])) best = w;
    if (best == v) sum += omega(x);
  }
  return sum;
}

}  // namespace

long ph_index(const Graph& g, const std::vector<double>& f, int v) {
  check_locally_injective(g, f);
  std::vector<int> lower;
  for (int w : g.neighbors(v))
    if (f[static_cast<std::size_t>(w)] < f[static_cast<std::size_t>(v)]) lower.push_back(w);
  return 1 - euler_characteristic(SimplicialComplex::whitney(g, lower));
}

long transport_index(const Graph& g, const std::vector<double>& f, int v) {
  return transport(g, f, v, [](double a, double b) { return a > b; });
}

long transport_index_min(const Graph& g, const std::vector<double>& f, int v) {
  return transport(g, f, v, [](double a, double b) { return a < b; });
}

Mat<Rational> counting_matrix(const SimplicialComplex& c, const std::vector<Rational>& h) {
  const auto& s = c.simplices();
  const int n = static_cast<int>(s.size());
  if (static_cast<int>(h.size()) != n) throw Error(ErrorCode::kConfig, "energy needs one value per simplex");
  Mat<Rational> l(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Simplex common;
      std::set_intersection(s[a].begin(), s[a].end(), s[b].begin(), s[b].end(), std::back_inserter(common));
      Rational sum(0);
      // all nonempty subsets of x ∩ y are simplices of G by closure
      const unsigned full = 1u << common.size();
      for (unsigned mask = 1; mask < full; ++mask) {
        Simplex z;
        for (std::size_t k = 0; k < common.size(); ++k)
          if (mask & (1u << k)) z.push_back(common[k]);
        sum += h[static_cast<std::size_t>(c.index_of(z))];
      }
      l(a, b) = sum;
      l(b, a) = sum;
    }
  return l;
}

std::vector<Rational> omega_energy(const SimplicialComplex& c) {
  std::vector<Rational> h;
  for (const auto& x : c.simplices()) h.emplace_back(omega(x));
  return h;
}

Rational green_sum(const SimplicialComplex& c, const std::vector<Rational>& h) {
  for (const auto& v : h)
    if (v == 0) throw Error(ErrorCode::kSingularL, "energy vanishes on a simplex, so L is singular");
  const Mat<Rational> g = inverse(counting_matrix(c, h));
  Rational sum(0);
  for (int a = 0; a < g.rows(); ++a)
    for (int b = 0; b < g.cols(); ++b) sum += g(a, b);
  return sum;
}

std::vector<SimplicialComplex> all_small_complexes(int max_vertices) {
  std::vector<SimplicialComplex> out;
  for (int k = 1; k <= max_vertices; ++k) {
    // nonempty subsets of {0..k-1} as bitmasks
    std::vector<Simplex> subsets;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      Simplex s;
      for (int v = 0; v < k; ++v)
        if (mask & (1u << v)) s.push_back(v);
      subsets.push_back(s);
    }
    const std::size_t m = subsets.size();
    for (unsigned long family = 1; family < (1ul << m); ++family) {
      std::vector<Simplex> chosen;
      std::set<Simplex> set;
      for (std::size_t i = 0; i < m; ++i)
        if (family & (1ul << i)) {
          chosen.push_back(subsets[i]);
          set.insert(subsets[i]);
        }
      bool uses_all = true;
      for (int v = 0; v < k; ++v) uses_all = uses_all && set.count(Simplex{v});
      if (!uses_all) continue;
      bool closed = true;
      for (const auto& x : chosen) {
        if (x.size() < 2) continue;
        for (std::size_t drop = 0; drop < x.size() && closed; ++drop) {
          Simplex face;
          for (std::size_t q = 0; q < x.size(); ++q)
            if (q != drop) face.push_back(x[q]);
          closed = set.count(face) > 0;
        }
        if (!closed) break;
      }
      if (closed) out.push_back(SimplicialComplex::from_simplices(chosen));
    }
  }
  return out;
}

std::vector<SimplicialComplex> random_complex_corpus(int count, std::size_t max_simplices, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  static const std::vector<SimplicialComplex> small = all_small_complexes(4);
  const double ps[] = {0.3, 0.5, 0.7};
  std::vector<SimplicialComplex> out;
  while (static_cast<int>(out.size()) < count) {
    if (out.size() % 2 == 0) {
      const int n = std::uniform_int_distribution<int>(1, 8)(rng);
      const double p = ps[std::uniform_int_distribution<int>(0, 2)(rng)];
      SimplicialComplex c = SimplicialComplex::whitney(Graph::erdos_renyi(n, p, rng));
      if (c.size() <= max_simplices) out.push_back(std::move(c));
    } else {
      const auto& c = small[std::uniform_int_distribution<std::size_t>(0, small.size() - 1)(rng)];
      if (c.size() <= max_simplices) out.push_back(c);
    }
  }
  return out;
}

}  // namespace curvfun

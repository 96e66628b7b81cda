#include <doctest.h>

#include <algorithm>
#include <random>

#include "curvfun/error.hpp"
#include "curvfun/discrete.hpp"

using namespace curvfun;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kNonFinite;
}

std::vector<double> random_order(int n, std::mt19937_64& rng) {
  std::vector<double> f(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = 0.5 * i;
  std::shuffle(f.begin(), f.end(), rng);
  return f;
}

}  // namespace

TEST_SUITE("discrete") {
  TEST_CASE("canonical order and closure") {
    const SimplicialComplex c = SimplicialComplex::closure_of({{2, 0, 1}});
    CHECK(c.size() == 7);
    CHECK(c.simplices().front() == Simplex{0});
    CHECK(c.simplices().back() == Simplex{0, 1, 2});
    CHECK(c.index_of({1, 0}) == 3);
    CHECK(c.index_of({0, 3}) == -1);
    CHECK(euler_characteristic(c) == 1);
    CHECK(code_of([] { (void)SimplicialComplex::from_simplices({{0}, {0, 1}}); }) == ErrorCode::kInvalidComplex);
    CHECK(code_of([] { (void)SimplicialComplex::from_simplices({{0}, {0}}); }) == ErrorCode::kInvalidComplex);
    CHECK(code_of([] { (void)SimplicialComplex::from_simplices({{}}); }) == ErrorCode::kInvalidComplex);
  }

  TEST_CASE("Whitney complexes") {
    CHECK(euler_characteristic(SimplicialComplex::whitney(Graph::cycle(4))) == 0);
    CHECK(euler_characteristic(SimplicialComplex::whitney(Graph::cycle(3))) == 1);
    // octahedron: a 2-sphere
    Graph g(6);
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        if (b != a + 3) g.add_edge(a, b);
    CHECK(euler_characteristic(SimplicialComplex::whitney(g)) == 2);
  }

  TEST_CASE("JSON round trip") {
    const SimplicialComplex c = SimplicialComplex::whitney(Graph::cycle(5));
    const SimplicialComplex d = SimplicialComplex::from_json(nlohmann::json::parse(c.to_json().dump()));
    CHECK(d.simplices() == c.simplices());
    CHECK(code_of([] { (void)SimplicialComplex::from_json(nlohmann::json::parse("[[0],[0,1]]")); }) ==
          ErrorCode::kInvalidComplex);
    CHECK(code_of([] { (void)SimplicialComplex::from_json(nlohmann::json::parse("[\"a\"]")); }) ==
          ErrorCode::kInvalidComplex);
  }

  TEST_CASE("Poincare-Hopf on random graphs") {
    std::mt19937_64 rng(5);
    const double ps[] = {0.3, 0.5, 0.7};
    for (int t = 0; t < 200; ++t) {
      const int n = 1 + t % 8;
      const Graph g = Graph::erdos_renyi(n, ps[t % 3], rng);
      const auto f = random_order(n, rng);
      long sum = 0, sum_min = 0;
      for (int v = 0; v < n; ++v) {
        const long i = ph_index(g, f, v);
        CHECK(transport_index(g, f, v) == i);
        sum += i;
        sum_min += transport_index_min(g, f, v);
      }
      const long chi = euler_characteristic(SimplicialComplex::whitney(g));
      CHECK(sum == chi);
      CHECK(sum_min == chi);
    }
  }

  TEST_CASE("non-injective functions are rejected") {
    const Graph g = Graph::cycle(4);
    CHECK(code_of([&] { (void)ph_index(g, {1, 1, 2, 3}, 0); }) == ErrorCode::kNotLocallyInjective);
    // equal values on non-adjacent vertices are fine
    CHECK_NOTHROW(ph_index(g, {1, 2, 1, 3}, 0));
  }

  TEST_CASE("counting matrix identities") {
    const auto corpus = random_complex_corpus(100, 12, 3);
    CHECK(corpus.size() == 100);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> pick(1, 4);
    std::bernoulli_distribution coin(0.5);
    for (const auto& c : corpus) {
      CHECK(c.size() <= 12);
      std::vector<Rational> h, unit;
      Rational prod(1), total(0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        h.emplace_back(Rational(pick(rng)) * (coin(rng) ? 1 : -1) / pick(rng));
        h.back().canonicalize();
        prod *= h.back();
        unit.emplace_back(coin(rng) ? 1 : -1);
        total += unit.back();
      }
      CHECK(determinant(counting_matrix(c, h)) == prod);
      CHECK(green_sum(c, unit) == total);
      const Rational d = determinant(counting_matrix(c, omega_energy(c)));
      CHECK((d == 1 || d == -1));
      CHECK(green_sum(c, omega_energy(c)) == euler_characteristic(c));
    }
  }

  TEST_CASE("green sum needs a nonvanishing energy") {
    const SimplicialComplex c = SimplicialComplex::closure_of({{0, 1}});
    CHECK(code_of([&] { (void)green_sum(c, {1, 0, 1}); }) == ErrorCode::kSingularL);
  }

  TEST_CASE("small complex enumeration") {
    const auto all = all_small_complexes(3);
    // 1 + 2 + 9 complexes using all vertices on 1, 2, 3 labelled vertices
    CHECK(all.size() == 12);
  }
}

#include <stdexcept>
#include <cmath>
#include <random>

#include <doctest.h>

#include "ricciflow/graph.hpp"

using namespace ricciflow;

namespace {

GraphFunction random_function(std::mt19937_64& rng, int n, double lo = -1.0,
                              double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  GraphFunction f(n);
  for (double& v : f) v = dist(rng);
  return f;
}

// Explicit sum form of Gamma(f)(x), the identity the evaluator must satisfy.
double gamma_sum_form(const WeightedGraph& g, const VertexMeasure& m,
                      const GraphFunction& f, Vertex x) {
  double acc = 0.0;
  for (auto [y, w] : g.neighbors(x)) acc += w * (f[y] - f[x]) * (f[y] - f[x]);
  return acc / (2.0 * m[x]);
}

}  // namespace

TEST_CASE("generators build the named graphs") {
  WeightedGraph c5 = make_cycle(5);
  CHECK(c5.num_vertices() == 5);
  CHECK(c5.edges().size() == 5);
  for (Vertex x = 0; x < 5; ++x) CHECK(c5.degree(x) == 2);

  WeightedGraph t3 = make_tree_t3();
  CHECK(t3.num_vertices() == 10);
  CHECK(t3.edges().size() == 9);
  CHECK(t3.degree(0) == 3);
  int leaves = 0;
  for (Vertex x = 0; x < 10; ++x) leaves += t3.degree(x) == 1;
  CHECK(leaves == 6);
  CHECK(t3.boundary() == std::vector<Vertex>{4, 5, 6, 7, 8, 9});
  CHECK(t3.label(0) == "x1");
  CHECK(t3.label(9) == "x10");
  CHECK(t3.adjacent(0, 1));
  CHECK(t3.adjacent(1, 4));
  CHECK(!t3.adjacent(0, 4));

  WeightedGraph c3 = make_cycle(3);
  for (Vertex x = 0; x < 3; ++x)
    for (Vertex y = 0; y < 3; ++y)
      if (x != y) CHECK(c3.adjacent(x, y));

  CHECK(make_star(4).num_vertices() == 5);
  CHECK(make_star(4).degree(0) == 4);
  CHECK(make_path(4).edges().size() == 3);
  CHECK(make_complete(4).edges().size() == 6);

  CHECK_THROWS_AS(make_cycle(2), std::invalid_argument);
  CHECK_THROWS_AS(generate(GraphFamily::Cycle, 0), std::invalid_argument);
  CHECK(generate(GraphFamily::TreeT3).num_vertices() == 10);
}

TEST_CASE("graph construction rejects invalid input") {
  CHECK_THROWS_AS(WeightedGraph({"a", "b"}, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph({"a", "b"}, {{0, 1, 1.0}, {1, 0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph({"a", "b"}, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph({"a", "b"}, {{0, 1, -2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph({"a", "b", "c"}, {{0, 1, 1.0}}),
                  std::invalid_argument);  // disconnected
  CHECK_THROWS_AS(WeightedGraph({"a", "a"}, {{0, 1, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(VertexMeasure({1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(VertexMeasure({1.0, -3.0}), std::invalid_argument);
}

TEST_CASE("laplacian examples") {
  WeightedGraph c3 = make_cycle(3);
  VertexMeasure ones = VertexMeasure::uniform(3);
  GraphFunction constant(3, 4.2);
  CHECK(laplacian_at(c3, ones, constant, 0) == doctest::Approx(0.0));

  GraphFunction f = {1.0, 0.0, 0.0};
  CHECK(laplacian_at(c3, ones, f, 0) == doctest::Approx(-2.0));
  CHECK(laplacian_at(c3, VertexMeasure({2, 1, 1}), f, 0) == doctest::Approx(-1.0));
}

TEST_CASE("gamma examples and symmetry") {
  WeightedGraph c3 = make_cycle(3);
  VertexMeasure ones = VertexMeasure::uniform(3);
  GraphFunction constant(3, -1.5);
  CHECK(gamma_at(c3, ones, constant, constant, 0) == doctest::Approx(0.0));

  GraphFunction f = {0.0, 1.0, 0.0};
  CHECK(gamma_at(c3, ones, f, f, 0) == doctest::Approx(0.5));

  std::mt19937_64 rng(7);
  WeightedGraph t3 = make_tree_t3();
  VertexMeasure m({1, 2, 0.5, 3, 1, 1, 2, 2, 0.7, 4});
  for (int trial = 0; trial < 20; ++trial) {
    GraphFunction a = random_function(rng, 10), b = random_function(rng, 10);
    for (Vertex x = 0; x < 10; ++x)
      CHECK(gamma_at(t3, m, a, b, x) == doctest::Approx(gamma_at(t3, m, b, a, x)));
  }
}

TEST_CASE("gamma equals its explicit sum form, including weighted graphs") {
  // pentagon with chords and non-unit weights
  WeightedGraph g({"p", "q", "r", "s", "t"},
                  {{0, 1, 0.3}, {1, 2, 2.5}, {2, 3, 1.0}, {3, 4, 0.8},
                   {4, 0, 1.7}, {0, 2, 0.6}});
  VertexMeasure m({0.4, 1.0, 3.0, 2.2, 0.9});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    GraphFunction f = random_function(rng, 5, -3.0, 3.0);
    for (Vertex x = 0; x < 5; ++x) {
      double lhs = gamma_at(g, m, f, f, x);
      double rhs = gamma_sum_form(g, m, f, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      CHECK(lhs >= -1e-12);
    }
  }
}

TEST_CASE("gamma2 leaf example and rayleigh quotient") {
  WeightedGraph t3 = make_tree_t3();
  VertexMeasure ones = VertexMeasure::uniform(10);
  GraphFunction f(10, 0.0);
  f[1] = 1.0;  // x2
  f[0] = 2.0;  // x1
  f[5] = 2.0;  // x6
  const Vertex x5 = 4;
  double g2 = gamma2_at(t3, ones, f, x5);
  CHECK(g2 == doctest::Approx(0.5));
  CHECK(g2 / gamma_at(t3, ones, f, f, x5) == doctest::Approx(1.0));
}

TEST_CASE("evaluators are invariant under constant shifts") {
  WeightedGraph t3 = make_tree_t3();
  VertexMeasure m({1, 2, 0.5, 3, 1, 1, 2, 2, 0.7, 4});
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    GraphFunction f = random_function(rng, 10);
    GraphFunction shifted = f;
    for (double& v : shifted) v += 17.25;
    for (Vertex x = 0; x < 10; ++x) {
      CHECK(laplacian_at(t3, m, shifted, x) ==
            doctest::Approx(laplacian_at(t3, m, f, x)).epsilon(1e-12));
      CHECK(gamma_at(t3, m, shifted, shifted, x) ==
            doctest::Approx(gamma_at(t3, m, f, f, x)).epsilon(1e-12));
      CHECK(gamma2_at(t3, m, shifted, x) ==
            doctest::Approx(gamma2_at(t3, m, f, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gamma2 depends only on the closed 2-ball") {
  WeightedGraph p6 = make_path(6);
  VertexMeasure m({1, 2, 3, 1, 2, 3});
  GraphFunction f = {0.5, -1.0, 2.0, 0.25, -3.0, 1.0};
  double base = gamma2_at(p6, m, f, 0);  // B2(0) = {0,1,2}
  GraphFunction perturbed = f;
  perturbed[3] = 100.0;
  perturbed[4] = -50.0;
  perturbed[5] = 7.0;
  CHECK(gamma2_at(p6, m, perturbed, 0) == base);
}

TEST_CASE("measure scaling covariance of the evaluators") {
  WeightedGraph t3 = make_tree_t3();
  std::mt19937_64 rng(31);
  VertexMeasure m({1, 2, 0.5, 3, 1, 1, 2, 2, 0.7, 4});
  GraphFunction f = random_function(rng, 10);
  for (double lambda : {0.5, 2.0, 10.0}) {
    std::vector<double> scaled = m.values();
    for (double& v : scaled) v *= lambda;
    VertexMeasure lm(scaled);
    for (Vertex x = 0; x < 10; ++x) {
      CHECK(laplacian_at(t3, lm, f, x) ==
            doctest::Approx(laplacian_at(t3, m, f, x) / lambda));
      CHECK(gamma_at(t3, lm, f, f, x) ==
            doctest::Approx(gamma_at(t3, m, f, f, x) / lambda));
      CHECK(gamma2_at(t3, lm, f, x) ==
            doctest::Approx(gamma2_at(t3, m, f, x) / (lambda * lambda)));
    }
  }
}

TEST_CASE("spheres") {
  WeightedGraph c5 = make_cycle(5);
  Spheres s = spheres(c5, 0);
  CHECK(s.s1 == std::vector<Vertex>{1, 4});
  CHECK(s.s2 == std::vector<Vertex>{2, 3});

  WeightedGraph t3 = make_tree_t3();
  Spheres leaf = spheres(t3, 4);  // x5
  CHECK(leaf.s1 == std::vector<Vertex>{1});
  CHECK(leaf.s2 == std::vector<Vertex>{0, 5});

  WeightedGraph k4 = make_complete(4);
  for (Vertex x = 0; x < 4; ++x) {
    Spheres sk = spheres(k4, x);
    CHECK(sk.s1.size() == 3);
    CHECK(sk.s2.empty());
  }
}

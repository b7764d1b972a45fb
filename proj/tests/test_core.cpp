#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "densim/core.hpp"
#include "oracle.hpp"

using namespace densim;

namespace {

Graph triangle_plus_pendant() { return Graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}); }

}  // namespace

TEST_CASE("graph invariants") {
  CHECK_THROWS_AS(Graph(3, {{0, 1}}), Error);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 2}}), Error);

  Graph g(3, {{1, 0}, {2, 1}});
  CHECK(g.edge(0) == Edge{0, 1});
  CHECK(g.edge(1) == Edge{1, 2});
  CHECK(g.degree(1) == 2);
  CHECK(g.incident(0).size() == 1);
}

TEST_CASE("pair weights store only nonzero pairs with exact totals") {
  PairWeights w(4, {{2, 0, 0.5}, {1, 3, 0.0}, {1, 2, 0.25}});
  CHECK(w.pair_count() == 2);
  CHECK(w.value(0, 2) == 0.5);
  CHECK(w.value(2, 0) == 0.5);
  CHECK(w.value(1, 3) == 0.0);
  CHECK(w.total(2) == 0.75);
  CHECK(w.min_nonzero() == 0.25);
  CHECK(w.max_value() == 0.5);
  CHECK_THROWS_AS(PairWeights(3, {{0, 1, 1.0}, {1, 0, 2.0}}), Error);
  CHECK_THROWS_AS(PairWeights(3, {{0, 1, -1.0}}), Error);
  CHECK_THROWS_AS(PairWeights(3, {{1, 1, 1.0}}), Error);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    PairWeights r = oracle::random_weights(rng, 15, 0.4);
    for (std::uint32_t e = 0; e < 15; ++e) {
      double direct = 0.0;
      for (std::uint32_t d = 0; d < 15; ++d) {
        if (d != e) direct += r.value(e, d);
      }
      CHECK(r.total(e) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("edge set node cover") {
  Graph g = triangle_plus_pendant();
  EdgeSet x(g, {3, 0, 3});
  CHECK(x.size() == 2);
  CHECK(std::vector<NodeId>(x.node_cover().begin(), x.node_cover().end()) ==
        std::vector<NodeId>{0, 1, 2, 3});
  CHECK(x.contains(3));
  CHECK_FALSE(x.contains(1));
}

TEST_CASE("density") {
  Graph g = triangle_plus_pendant();
  CHECK(density(g, EdgeSet(g, {0})).value() == 0.5);
  Density tri = density(g, EdgeSet(g, {0, 1, 2}));
  CHECK(tri.numerator == 3);
  CHECK(tri.denominator == 3);
  CHECK(tri.value() == 1.0);
  CHECK_THROWS_WITH_AS(density(g, EdgeSet(g, {})), "density undefined for empty edge set", Error);

  CHECK(Density{2, 4} == Density{1, 2});
  CHECK(Density{1, 2} < Density{2, 3});
}

TEST_CASE("density equals the degree-sum form") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    Graph g = oracle::random_graph(rng, 8, 12);
    for (std::uint64_t mask : {0x1ull, 0x7ull, 0xFFFull, 0x5A5ull, 0x813ull}) {
      EdgeSet x(g, oracle::members_of(mask));
      CHECK(density(g, x).value() == density_from_degrees(g, x));
    }
  }
}

TEST_CASE("subgraph similarity") {
  Graph g(3, {{0, 1}, {1, 2}});
  PairWeights sim(2, {{0, 1, 0.8}});
  CHECK(subgraph_similarity(sim, EdgeSet(g, {0})) == 0.0);
  CHECK(subgraph_similarity(sim, EdgeSet(g, {0, 1})) == doctest::Approx(0.4));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    PairWeights w = oracle::random_weights(rng, 12, 0.5);
    Graph rg = oracle::random_graph(rng, 9, 12);
    std::uint64_t mask = rng() & 0xFFF;
    if (mask == 0) mask = 1;
    auto x = oracle::members_of(mask);
    double direct = x.size() <= 1 ? 0.0 : oracle::pair_sum(w, x) / static_cast<double>(x.size());
    CHECK(subgraph_similarity(w, EdgeSet(rg, x)) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("objectives") {
  CHECK(objective_dss(1.0, {3, 4}, 0.0) == 1.0);
  CHECK(objective_dss(0.25, {3, 2}, 2.0) == doctest::Approx(3.25));
  CHECK(objective_dss(0.0, {1, 2}, 1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(objective_dss(1.0, {1, 2}, -1.0), Error);

  CHECK(objective_dss_inv(1.0, {3, 4}, 0.0) == 1.0);
  CHECK(objective_dss_inv(0.4, {2, 3}, 0.05) == doctest::Approx(0.325));
  CHECK(objective_dss_inv(0.0, {1, 2}, 1.0) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(objective_dss_inv(1.0, {0, 1}, 1.0), Error);
  CHECK_THROWS_AS(objective_dss_inv(1.0, {1, 2}, -0.5), Error);
}

TEST_CASE("lambda and mu mapping") {
  Graph g = triangle_plus_pendant();
  PairWeights sim(4, {{0, 1, 1.0}});
  // Four edges on four nodes, D = 1; three on three, D = 1; need D = 3/2.
  Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  PairWeights k4sim(6, {{0, 1, 1.0}});
  Solution s15 = make_solution(k4, k4sim, EdgeSet(k4, {0, 1, 2, 3, 4, 5}), 0.0);
  CHECK(s15.density.value() == 1.5);
  CHECK(map_mu_to_lambda(s15, 2.0) == doctest::Approx(4.5));

  Solution s1 = make_solution(g, sim, EdgeSet(g, {0, 1, 2}), 0.0);
  CHECK(map_mu_to_lambda(s1, 0.7) == doctest::Approx(0.7));
  CHECK_THROWS_AS(map_mu_to_lambda(s1, -0.1), Error);

  for (double lambda : {0.0, 0.3, 12.5, 1e6}) {
    double back = map_mu_to_lambda(s15, map_lambda_to_mu(s15, lambda));
    CHECK(back == doctest::Approx(lambda).epsilon(1e-12));
  }
}

TEST_CASE("make_solution fills the objective") {
  Graph g = triangle_plus_pendant();
  PairWeights sim(4, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  Solution s = make_solution(g, sim, EdgeSet(g, {0, 1, 2}), 0.25);
  CHECK(s.similarity == doctest::Approx(1.0));
  CHECK(s.objective_inv ==
        doctest::Approx(s.similarity - 0.25 * static_cast<double>(s.density.denominator) /
                                           static_cast<double>(s.density.numerator))
            .epsilon(1e-12));
  Solution at_zero = make_solution(g, sim, EdgeSet(g, {0, 1, 2}), 0.0);
  CHECK(at_zero.objective_inv == at_zero.similarity);
}

TEST_CASE("argmax correspondence between the two objectives") {
  // Brute force only: for every mu, the optimum of S + mu D is optimal for
  // S - lambda / D at lambda = D(X*)^2 mu.
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    Graph g = oracle::random_graph(rng, 7, 9);
    PairWeights sim = oracle::random_weights(rng, 9, 0.6);
    auto sigs = oracle::all_signatures(g, sim);
    for (double mu : {0.0, 0.05, 0.2, 0.5, 1.0, 3.0}) {
      oracle::Best dss = oracle::best_over(sigs, oracle::o_mu, mu, 1e-12);
      const auto& star = dss.argmax.front();
      double lambda = star.d.value() * star.d.value() * mu;
      oracle::Best inv = oracle::best_over(sigs, oracle::o_lambda, lambda, 1e-9);
      bool found = std::any_of(inv.argmax.begin(), inv.argmax.end(),
                               [&](const oracle::Signature& s) { return oracle::same_signature(s, star); });
      CHECK(found);
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "densim/fp.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace densim;

namespace {

void check_trace(const FpTrace& trace, std::size_t element_count) {
  CHECK(trace.converged);
  CHECK(trace.mincut_solves() >= 1);
  CHECK(trace.mincut_solves() <= element_count);
  for (std::size_t k = 1; k < trace.iterations.size(); ++k) {
    CHECK(trace.iterations[k].c > trace.iterations[k - 1].c);
  }
}

}  // namespace

TEST_CASE("path example converges in one solve") {
  auto f = fixtures::path();
  DssInvResult r = solve_dss_inv(f.graph, f.sim, 0.05);
  CHECK(r.solution.edge_set.size() == 2);
  CHECK(r.solution.objective_inv == doctest::Approx(0.325));
  REQUIRE(r.trace.iterations.size() == 1);
  CHECK(r.trace.iterations[0].c == doctest::Approx(0.325));
  CHECK(r.trace.iterations[0].q_value == doctest::Approx(0.0));
  check_trace(r.trace, 2);
}

TEST_CASE("lambda zero maximizes similarity") {
  auto f = fixtures::k4_star();
  DssInvResult r = solve_dss_inv(f.graph, f.sim, 0.0);
  CHECK(std::vector<EdgeId>(r.solution.edge_set.members().begin(), r.solution.edge_set.members().end()) ==
        std::vector<EdgeId>{6, 7, 8});
  CHECK(r.solution.similarity == doctest::Approx(1.0));
  CHECK(r.solution.density == Density{3, 4});
  check_trace(r.trace, 9);
}

TEST_CASE("triangle beats the pendant for lambda in [0, 1]") {
  auto f = fixtures::triangle_pendant();
  for (double lambda : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    DssInvResult r = solve_dss_inv(f.graph, f.sim, lambda);
    CHECK(std::vector<EdgeId>(r.solution.edge_set.members().begin(), r.solution.edge_set.members().end()) ==
          std::vector<EdgeId>{0, 1, 2});
    CHECK(r.solution.objective_inv == doctest::Approx(1.0 - lambda));
  }
}

TEST_CASE("argument checks") {
  auto f = fixtures::path();
  CHECK_THROWS_AS(solve_dss_inv(f.graph, f.sim, -1.0), Error);
  EdgeSimilarity wrong(3, {{0, 1, 1.0}});
  CHECK_THROWS_AS(solve_dss_inv(f.graph, wrong, 0.1), Error);
}

TEST_CASE("huge lambda still returns a nonempty set") {
  auto f = fixtures::k4_star();
  DssInvResult r = solve_dss_inv(f.graph, f.sim, 1e9);
  CHECK_FALSE(r.solution.edge_set.empty());
  // The best O is reached by the densest set, the K4.
  CHECK(r.solution.density == Density{3, 2});
}

TEST_CASE("solve_dss_inv agrees with subset enumeration") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 120; ++t) {
    std::size_t m = std::uniform_int_distribution<std::size_t>(2, 11)(rng);
    Graph g = oracle::random_graph(rng, 7, m);
    EdgeSimilarity sim = oracle::random_weights(rng, m, 0.6, t % 3 == 0 ? 5 : 0);
    double lambda_max = sim.max_value() * static_cast<double>(m * m) / 2.0;
    double lambda = unit(rng) * (t % 2 ? lambda_max : 1.0);
    for (bool reuse : {true, false}) {
      FpOptions opt;
      opt.reuse_flow = reuse;
      DssInvResult r = solve_dss_inv(g, sim, lambda, opt);
      oracle::Best best = oracle::dss_inv(g, sim, lambda);
      CHECK(r.solution.objective_inv == doctest::Approx(best.value).epsilon(1e-7));
      CHECK(r.trace.iterations.back().c == doctest::Approx(r.solution.objective_inv).epsilon(1e-9));
      check_trace(r.trace, m);
    }
  }
}

TEST_CASE("ratio maximization without a cover") {
  PairWeights w(4, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {2, 3, 0.1}});
  RatioResult r = maximize_ratio(w, nullptr, 0.0);
  CHECK(r.selected == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(r.ratio == doctest::Approx(1.0));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "densim/ingest.hpp"
#include "oracle.hpp"

using namespace densim;

namespace {

MultilayerGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_multiplex(in);
}

std::string fixture(const char* name) { return std::string(DENSIM_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("parse a small multiplex") {
  MultilayerGraph ml = parse("1 a b\n1 b c\n2 a b\n");
  CHECK(ml.node_count() == 3);
  REQUIRE(ml.edges.size() == 2);
  CHECK(ml.layers == std::vector<std::string>{"1", "2"});
  CHECK(ml.node_names == std::vector<std::string>{"a", "b", "c"});
  CHECK(ml.edge_labels[0] == std::vector<LayerId>{0, 1});
  CHECK(ml.edge_labels[1] == std::vector<LayerId>{0});
  CHECK(ml.layer_edges[1] == std::vector<EdgeId>{0});
}

TEST_CASE("parse drops direction, repeats, weights and comments") {
  MultilayerGraph ml = parse("# header\n\nx 1 2 0.5\nx 2 1\n  x 2 3 7\ny 3 2\n");
  CHECK(ml.edges.size() == 2);
  CHECK(ml.layer_edges[0].size() == 2);
  CHECK(ml.edge_labels[1] == std::vector<LayerId>{0, 1});
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse("1 a b\n1 a a\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(parse("1 a b\n1 a\n1 b c\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(parse("1 a b\n1 b c x\n"), doctest::Contains("line 2"), Error);
  try {
    parse("1 a b\n1 b a\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerate);
  }
  try {
    parse_multiplex_file("/nonexistent/file.edges");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("jaccard") {
  // Label sets {a,b,c,d} and {a,b,c,e}.
  std::vector<LayerId> a{0, 1, 2, 3}, b{0, 1, 2, 4};
  CHECK(jaccard(a, b) == doctest::Approx(0.6));
  CHECK(jaccard(a, a) == 1.0);
  CHECK(jaccard(std::vector<LayerId>{0}, std::vector<LayerId>{1}) == 0.0);
  CHECK_THROWS_AS(jaccard(std::vector<LayerId>{}, a), Error);
}

TEST_CASE("similarity is materialized only for co-appearing pairs") {
  SimilarityGraph sg = build_similarity(parse("1 a b\n1 b c\n2 b c\n"));
  REQUIRE(sg.similarity.pair_count() == 1);
  CHECK(sg.similarity.value(0, 1) == doctest::Approx(0.5));

  MultilayerGraph disjoint = parse("1 a b\n2 c d\n");
  CHECK(build_similarity(disjoint).similarity.pair_count() == 0);
  CHECK(count_meta_pairs(disjoint) == 0);
}

TEST_CASE("similarity matches a direct pairwise scan") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    MultilayerGraph ml = parse(oracle::random_multiplex(rng, 12, 4, 45));
    SimilarityGraph sg = build_similarity(ml);
    std::size_t co = 0;
    for (std::size_t e = 0; e < ml.edges.size(); ++e) {
      double total = 0.0;
      for (std::size_t d = 0; d < ml.edges.size(); ++d) {
        if (d == e) continue;
        double j = jaccard(ml.edge_labels[e], ml.edge_labels[d]);
        total += j;
        if (d > e && j > 0.0) ++co;
        CHECK(sg.similarity.value(e, d) == doctest::Approx(j).epsilon(1e-12));
      }
      CHECK(sg.similarity.total(e) == doctest::Approx(total).epsilon(1e-9));
    }
    CHECK(sg.similarity.pair_count() == co);
    CHECK(count_meta_pairs(ml) == co);
  }
}

TEST_CASE("statistics") {
  MultilayerGraph ml = parse("L a b\nL b c\n");
  SimilarityGraph sg = build_similarity(ml);
  DatasetStats s = stats(ml, sg.graph, sg.similarity);
  CHECK(s.num_layers == 1);
  CHECK(s.num_mult_edges == s.num_edges);
  CHECK(s.avg_edge_participation == 1.0);
  CHECK(s.num_meta_pairs == 1);
  CHECK(s.density == doctest::Approx(2.0 / 3.0));
  CHECK(s.similarity == doctest::Approx(0.5));
}

TEST_CASE("CS-Aarhus statistics") {
  MultilayerGraph ml = parse_multiplex_file(fixture("cs_aarhus.edges"));
  SimilarityGraph sg = build_similarity(ml);
  DatasetStats s = stats(ml, sg.graph, sg.similarity);
  CHECK(s.num_nodes == 61);
  CHECK(s.num_edges == 353);
  CHECK(s.num_layers == 5);
  CHECK(s.num_mult_edges == 620);
  CHECK(s.num_meta_pairs == 39565);
  CHECK(sg.similarity.pair_count() == 39565);
  // The published table truncates to two decimals.
  auto two_decimals = [](double x) { return std::floor(x * 100.0) / 100.0; };
  CHECK(two_decimals(s.density) == doctest::Approx(5.78));
  CHECK(two_decimals(s.avg_layer_density) == doctest::Approx(2.60));
  CHECK(two_decimals(s.similarity) == doctest::Approx(57.44));
  CHECK(two_decimals(s.avg_edge_participation) == doctest::Approx(1.75));
  CHECK(s.avg_edges_per_layer == doctest::Approx(124.0));
}

TEST_CASE("random instances") {
  RandomInstance k4 = generate_random(4, 6, 1.0, 1);
  CHECK(k4.graph.edge_count() == 6);
  CHECK(k4.graph.node_count() == 4);
  CHECK(k4.similarity.pair_count() == 15);
  for (const auto& p : k4.similarity.pairs()) {
    CHECK(p.weight > 0.0);
    CHECK(p.weight <= 1.0);
  }

  RandomInstance a = generate_random(50, 200, 0.05, 99);
  RandomInstance b = generate_random(50, 200, 0.05, 99);
  CHECK(std::equal(a.graph.edges().begin(), a.graph.edges().end(), b.graph.edges().begin()));
  REQUIRE(a.similarity.pair_count() == b.similarity.pair_count());
  for (std::size_t i = 0; i < a.similarity.pair_count(); ++i) {
    CHECK(a.similarity.pairs()[i].weight == b.similarity.pairs()[i].weight);
  }
  std::set<std::pair<NodeId, NodeId>> distinct;
  for (const auto& e : a.graph.edges()) distinct.insert({e.u, e.v});
  CHECK(distinct.size() == 200);

  CHECK(generate_random(50, 200, 0.0, 1).similarity.empty());
  CHECK_THROWS_AS(generate_random(4, 7, 0.5, 1), Error);
  CHECK_THROWS_AS(generate_random(4, 1, 0.5, 1), Error);
  CHECK_THROWS_AS(generate_random(10, 5, 1.5, 1), Error);
}

TEST_CASE("similarity density tracks p") {
  RandomInstance r = generate_random(300, 2000, 0.01, 5);
  double expected = 0.01 * 2000.0 * 1999.0 / 2.0;
  CHECK(static_cast<double>(r.similarity.pair_count()) == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("edge list and sidecar round-trip") {
  RandomInstance r = generate_random(30, 80, 0.2, 42);
  std::stringstream edges, sims;
  write_edge_list(edges, r.graph);
  write_similarity(sims, r.similarity);

  MultilayerGraph ml = parse_multiplex(edges);
  Graph g = ml.flattened();
  EdgeSimilarity s = read_similarity(sims, g.edge_count());
  REQUIRE(g.edge_count() == r.graph.edge_count());
  CHECK(g.node_count() == r.graph.node_count());
  CHECK(std::equal(g.edges().begin(), g.edges().end(), r.graph.edges().begin()));
  REQUIRE(s.pair_count() == r.similarity.pair_count());
  for (std::size_t i = 0; i < s.pair_count(); ++i) {
    CHECK(s.pairs()[i].a == r.similarity.pairs()[i].a);
    CHECK(s.pairs()[i].b == r.similarity.pairs()[i].b);
    CHECK(s.pairs()[i].weight == r.similarity.pairs()[i].weight);
  }
}

TEST_CASE("sidecar errors") {
  std::istringstream bad("0 1 0.5\n0 9 0.5\n");
  CHECK_THROWS_AS(read_similarity(bad, 3), Error);
  std::istringstream junk("0 1 x\n");
  CHECK_THROWS_WITH_AS(read_similarity(junk, 3), doctest::Contains("line 1"), Error);
}

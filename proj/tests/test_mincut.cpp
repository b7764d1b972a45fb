#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "densim/mincut.hpp"
#include "oracle.hpp"

using namespace densim;

namespace {

// Random network on `n` nodes (0 source, 1 sink) with parametric source and
// sink arcs, bidirectional inner arcs and a few infinite ones. Mirrors every
// arc into `arcs` for the cut enumerator.
struct RandomNetwork {
  FlowNetwork net;
  std::vector<oracle::Arc> arcs;
  std::vector<ArcId> source_arcs;
  std::vector<ArcId> sink_arcs;
};

RandomNetwork random_network(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> cap(0.0, 2.0);
  std::bernoulli_distribution coin(0.5);
  RandomNetwork r{FlowNetwork(n, 0, 1), {}, {}, {}};
  for (FlowNode v = 2; v < n; ++v) {
    double c = cap(rng);
    r.source_arcs.push_back(r.net.add_arc(0, v, c));
    r.net.mark_parametric(r.source_arcs.back());
    r.arcs.push_back({0, v, c});
    double d = coin(rng) ? cap(rng) : 0.0;
    r.sink_arcs.push_back(r.net.add_arc(v, 1, d));
    r.net.mark_parametric(r.sink_arcs.back());
    r.arcs.push_back({v, 1, d});
  }
  for (FlowNode u = 2; u < n; ++u) {
    for (FlowNode v = u + 1; v < n; ++v) {
      int kind = std::uniform_int_distribution<int>(0, 5)(rng);
      if (kind <= 1) {
        double c = cap(rng), b = coin(rng) ? c : cap(rng);
        r.net.add_arc(u, v, c, b);
        r.arcs.push_back({u, v, c});
        r.arcs.push_back({v, u, b});
      } else if (kind == 2) {
        r.net.add_infinite_arc(u, v);
        r.arcs.push_back({u, v, 0.0, true});
      }
    }
  }
  return r;
}

std::vector<FlowNode> side_of(const CutResult& c) { return c.source_side; }

}  // namespace

TEST_CASE("four-node example") {
  FlowNetwork net(4, 0, 1);
  net.add_arc(0, 2, 3);
  net.add_arc(2, 1, 2);
  net.add_arc(0, 3, 1);
  net.add_arc(3, 1, 4);
  CutResult cut = net.min_cut();
  CHECK(cut.cut_value == doctest::Approx(3.0));
  CHECK(cut.flow_value == doctest::Approx(3.0));
  CHECK(side_of(cut) == std::vector<FlowNode>{0, 2});
  CHECK(oracle::min_cut(4, {{0, 2, 3}, {2, 1, 2}, {0, 3, 1}, {3, 1, 4}}).maximal_source_side ==
        std::vector<std::uint32_t>{0, 2});
}

TEST_CASE("zero source capacities give the maximal side") {
  FlowNetwork net(5, 0, 1);
  net.add_arc(0, 2, 0);
  net.add_arc(0, 3, 0);
  net.add_arc(2, 3, 1);
  net.add_arc(4, 1, 1);
  net.add_arc(3, 4, 0);
  CutResult cut = net.min_cut();
  CHECK(cut.cut_value == 0.0);
  // Node 4 reaches the sink; 3 -> 4 has no capacity.
  CHECK(side_of(cut) == std::vector<FlowNode>{0, 2, 3});
}

TEST_CASE("structural errors") {
  FlowNetwork net(3, 0, 1);
  CHECK_THROWS_AS(net.add_arc(2, 0, 1), Error);
  CHECK_THROWS_AS(net.add_arc(1, 2, 1), Error);
  CHECK_THROWS_AS(net.add_arc(0, 2, -1), Error);
  net.add_infinite_arc(0, 2);
  ArcId inf = net.add_infinite_arc(2, 1);
  CHECK_THROWS_AS(net.mark_parametric(inf), Error);
  try {
    net.min_cut();
    FAIL("expected an infinite cut");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasible);
  }
}

TEST_CASE("parametric updates must be monotone") {
  FlowNetwork net(3, 0, 1);
  ArcId s = net.add_arc(0, 2, 2);
  ArcId t = net.add_arc(2, 1, 1);
  ArcId plain = net.add_arc(0, 1, 1);
  net.mark_parametric(s);
  net.mark_parametric(t);
  CHECK(net.min_cut().cut_value == doctest::Approx(2.0));
  CHECK_THROWS_WITH_AS(net.update_parametric(s, 3), doctest::Contains("monotonicity violated"), Error);
  CHECK_THROWS_WITH_AS(net.update_parametric(t, 0.5), doctest::Contains("monotonicity violated"), Error);
  CHECK_THROWS_AS(net.update_parametric(plain, 0.5), Error);

  CutResult before = net.min_cut();
  net.update_parametric(s, net.capacity(s));
  CutResult same = net.min_cut();
  CHECK(same.cut_value == before.cut_value);
  CHECK(same.source_side == before.source_side);

  net.update_parametric(s, 0.0);
  CHECK(net.min_cut().cut_value == doctest::Approx(1.0));
  net.update_parametric(t, 4.0);
  CHECK(net.min_cut().cut_value == doctest::Approx(1.0));
}

TEST_CASE("min cut agrees with cut enumeration") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(3, 10)(rng);
    RandomNetwork r = random_network(rng, n);
    oracle::CutOracle expect = oracle::min_cut(n, r.arcs);
    CutResult cut = r.net.min_cut();
    CHECK(cut.cut_value == doctest::Approx(expect.value).epsilon(1e-9));
    CHECK(cut.flow_value == doctest::Approx(cut.cut_value).epsilon(1e-9));
    CHECK(side_of(cut) == expect.maximal_source_side);
    for (std::size_t a = 0; a < r.net.arc_count(); ++a) {
      if (r.net.is_infinite(static_cast<ArcId>(a))) {
        CHECK_FALSE((cut.in_source_side[r.net.arc_from(a)] && !cut.in_source_side[r.net.arc_to(a)]));
      }
    }
  }
}

TEST_CASE("incremental solves match from-scratch solves and nest") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(4, 14)(rng);
    RandomNetwork inc = random_network(rng, n);
    // Build an identical twin for the from-scratch path.
    FlowNetwork scratch(n, 0, 1);
    for (std::size_t a = 0; a < inc.net.arc_count(); ++a) {
      auto id = static_cast<ArcId>(a);
      ArcId b = inc.net.is_infinite(id)
                    ? scratch.add_infinite_arc(inc.net.arc_from(id), inc.net.arc_to(id))
                    : scratch.add_arc(inc.net.arc_from(id), inc.net.arc_to(id), inc.net.capacity(id),
                                      inc.net.reverse_capacity(id));
      if (inc.net.is_parametric(id)) scratch.mark_parametric(b);
    }
    std::vector<FlowNode> previous_side = inc.net.min_cut().source_side;
    for (int step = 0; step < 5; ++step) {
      std::vector<ParametricUpdate> updates;
      for (ArcId a : inc.source_arcs) updates.push_back({a, inc.net.capacity(a) * unit(rng)});
      for (ArcId a : inc.sink_arcs) updates.push_back({a, inc.net.capacity(a) + unit(rng)});
      inc.net.update_parametric(updates);
      scratch.update_parametric(updates);
      CutResult a = inc.net.min_cut();
      CutResult b = scratch.min_cut_from_scratch();
      CHECK(a.cut_value == doctest::Approx(b.cut_value).epsilon(1e-9));
      CHECK(a.source_side == b.source_side);
      CHECK(std::includes(previous_side.begin(), previous_side.end(), a.source_side.begin(),
                          a.source_side.end()));
      previous_side = a.source_side;
    }
    // Lowering everything to zero empties the cut.
    std::vector<ParametricUpdate> zero;
    for (ArcId a : inc.source_arcs) zero.push_back({a, 0.0});
    inc.net.update_parametric(zero);
    CHECK(inc.net.min_cut().cut_value == doctest::Approx(0.0));
  }
}

TEST_CASE("dimacs dump") {
  FlowNetwork net(4, 0, 1);
  net.add_arc(0, 2, 3);
  net.add_arc(2, 3, 1.5, 0.5);
  net.add_infinite_arc(3, 1);
  std::ostringstream out;
  net.write_dimacs(out);
  std::string text = out.str();
  CHECK(text.find("p max 4 4") != std::string::npos);
  CHECK(text.find("n 1 s") != std::string::npos);
  CHECK(text.find("n 2 t") != std::string::npos);
  CHECK(text.find("a 1 3 3") != std::string::npos);
  CHECK(text.find("a 4 3 0.5") != std::string::npos);
  CHECK(text.find("a 4 2 6") != std::string::npos);
}

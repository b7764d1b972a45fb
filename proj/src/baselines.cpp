#include "densim/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "densim/fp.hpp"

namespace densim {

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be finite and nonnegative");
  }
}

}  // namespace

DensestResult densest_weighted_subgraph(const WeightedCompleteGraph& wg) {
  if (wg.weights.empty()) throw Error(ErrorCode::kDegenerate, "all weights are zero");
  RatioResult r = maximize_ratio(wg.weights, nullptr, 0.0);
  return {std::move(r.selected), r.ratio};
}

WeightedCompleteGraph bl_den_weights(const MultilayerGraph& ml, double gamma) {
  check_gamma(gamma);
  const std::size_t n = ml.node_count();
  // Label union of every node.
  std::vector<std::vector<LayerId>> labels(n);
  for (std::size_t e = 0; e < ml.edges.size(); ++e) {
    for (NodeId v : {ml.edges[e].u, ml.edges[e].v}) {
      auto& l = labels[v];
      l.insert(l.end(), ml.edge_labels[e].begin(), ml.edge_labels[e].end());
    }
  }
  for (auto& l : labels) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }

  std::vector<WeightedPair> pairs;
  if (gamma > 0.0) {
    std::vector<std::vector<NodeId>> by_layer(ml.layers.size());
    for (NodeId v = 0; v < n; ++v) {
      for (LayerId l : labels[v]) by_layer[l].push_back(v);
    }
    // Pairs with disjoint labels have Jaccard 0; visit each overlapping pair
    // once, at its first common layer.
    for (LayerId l = 0; l < by_layer.size(); ++l) {
      const auto& members = by_layer[l];
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          const auto& a = labels[members[i]];
          const auto& b = labels[members[j]];
          LayerId first = l;
          for (std::size_t x = 0, y = 0; x < a.size() && y < b.size();) {
            if (a[x] == b[y]) {
              first = a[x];
              break;
            }
            a[x] < b[y] ? ++x : ++y;
          }
          if (first != l) continue;
          pairs.push_back({members[i], members[j], gamma * jaccard(a, b)});
        }
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const WeightedPair& x, const WeightedPair& y) {
      return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
  }
  for (const Edge& e : ml.edges) {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), e, [](const WeightedPair& p, const Edge& k) {
      return p.a != k.u ? p.a < k.u : p.b < k.v;
    });
    if (it != pairs.end() && it->a == e.u && it->b == e.v) {
      it->weight += 1.0;
    } else {
      pairs.push_back({e.u, e.v, 1.0});
    }
  }
  return {PairWeights(n, std::move(pairs)), gamma};
}

WeightedCompleteGraph bl_sim_weights(const Graph& graph, const EdgeSimilarity& sim, double gamma) {
  check_gamma(gamma);
  if (sim.element_count() != graph.edge_count()) {
    throw Error(ErrorCode::kInvalidArgument, "similarity does not match the graph's edges");
  }
  std::vector<WeightedPair> pairs(sim.pairs().begin(), sim.pairs().end());
  if (gamma > 0.0) {
    std::vector<WeightedPair> adjacent;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
      auto inc = graph.incident(v);
      for (std::size_t i = 0; i < inc.size(); ++i) {
        for (std::size_t j = i + 1; j < inc.size(); ++j) {
          adjacent.push_back({std::min(inc[i], inc[j]), std::max(inc[i], inc[j]), gamma});
        }
      }
    }
    // Two distinct simple-graph edges share at most one node, so `adjacent`
    // has no repeats; merge it into the similarity pairs.
    std::sort(adjacent.begin(), adjacent.end(), [](const WeightedPair& x, const WeightedPair& y) {
      return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    std::vector<WeightedPair> merged;
    merged.reserve(pairs.size() + adjacent.size());
    std::size_t i = 0, j = 0;
    while (i < pairs.size() || j < adjacent.size()) {
      if (j == adjacent.size() ||
          (i < pairs.size() &&
           (pairs[i].a != adjacent[j].a ? pairs[i].a < adjacent[j].a : pairs[i].b < adjacent[j].b))) {
        merged.push_back(pairs[i++]);
      } else if (i < pairs.size() && pairs[i].a == adjacent[j].a && pairs[i].b == adjacent[j].b) {
        merged.push_back({pairs[i].a, pairs[i].b, pairs[i].weight + adjacent[j].weight});
        ++i;
        ++j;
      } else {
        merged.push_back(adjacent[j++]);
      }
    }
    pairs = std::move(merged);
  }
  return {PairWeights(graph.edge_count(), std::move(pairs)), gamma};
}

EdgeSet induced_edges(const Graph& graph, std::span<const NodeId> sorted_nodes) {
  std::vector<char> in(graph.node_count(), 0);
  for (NodeId v : sorted_nodes) in[v] = 1;
  std::vector<EdgeId> members;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    if (in[graph.edge(e).u] && in[graph.edge(e).v]) members.push_back(e);
  }
  return EdgeSet(graph, std::move(members));
}

EdgeSet bl_den(const MultilayerGraph& ml, const Graph& graph, double gamma) {
  DensestResult r = densest_weighted_subgraph(bl_den_weights(ml, gamma));
  return induced_edges(graph, r.elements);
}

EdgeSet bl_sim(const Graph& graph, const EdgeSimilarity& sim, double gamma) {
  DensestResult r = densest_weighted_subgraph(bl_sim_weights(graph, sim, gamma));
  return EdgeSet(graph, std::move(r.elements));
}

}  // namespace densim

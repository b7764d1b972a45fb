#pragma once

// Small hand-made instances shared by the tests.

#include <string>
#include <vector>

#include "densim/core.hpp"
#include "densim/ingest.hpp"

namespace fixtures {

struct Instance {
  densim::Graph graph;
  densim::EdgeSimilarity sim;
};

/// K4 on nodes 0..3 with all 15 edge pairs at 0.1, and a 3-edge star on
/// nodes 4..7 with its 3 pairs at 1.0; nothing across. Edges 0..5 are the K4.
inline Instance k4_star() {
  std::vector<densim::Edge> edges{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                  {4, 5}, {4, 6}, {4, 7}};
  std::vector<densim::WeightedPair> pairs;
  for (std::uint32_t a = 0; a < 6; ++a) {
    for (std::uint32_t b = a + 1; b < 6; ++b) pairs.push_back({a, b, 0.1});
  }
  pairs.push_back({6, 7, 1.0});
  pairs.push_back({6, 8, 1.0});
  pairs.push_back({7, 8, 1.0});
  return {densim::Graph(8, edges), densim::EdgeSimilarity(9, pairs)};
}

/// Path e0 = (0,1), e1 = (1,2) with s = 0.8.
inline Instance path() {
  return {densim::Graph(3, {{0, 1}, {1, 2}}), densim::EdgeSimilarity(2, {{0, 1, 0.8}})};
}

/// Triangle with every pair at 1 plus a pendant edge similar to nothing.
inline Instance triangle_pendant() {
  return {densim::Graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}),
          densim::EdgeSimilarity(4, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}})};
}

/// Single-layer multiplex of a graph, for the node-level baseline.
inline densim::MultilayerGraph single_layer(const densim::Graph& g) {
  densim::MultilayerGraph ml;
  ml.layers = {"0"};
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    ml.node_names.push_back(std::to_string(v));
    ml.node_index[ml.node_names.back()] = static_cast<densim::NodeId>(v);
  }
  ml.edges.assign(g.edges().begin(), g.edges().end());
  ml.edge_labels.assign(g.edge_count(), {0});
  ml.layer_edges.resize(1);
  for (densim::EdgeId e = 0; e < g.edge_count(); ++e) ml.layer_edges[0].push_back(e);
  return ml;
}

inline std::string data_file(const char* name) { return std::string(DENSIM_TEST_DATA) + "/" + name; }

}  // namespace fixtures

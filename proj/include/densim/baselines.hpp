#pragma once

// Two baselines that fold the density and similarity criteria into a single
// weighted densest-subgraph problem.
//
// BLDen works on nodes: two nodes weigh 1 if they are adjacent in some layer,
// plus gamma times the Jaccard similarity of their label unions. BLSim works
// on edges: two edges weigh their similarity, plus gamma if they share a node.

#include <cstdint>
#include <vector>

#include "densim/core.hpp"
#include "densim/ingest.hpp"

namespace densim {

struct WeightedCompleteGraph {
  PairWeights weights;  // only nonzero pairs are stored
  double gamma = 0.0;
};

struct DensestResult {
  std::vector<std::uint32_t> elements;  // sorted
  double ratio = 0.0;
};

/// Maximizes (sum of weights inside X) / |X|. Throws kDegenerate when every
/// weight is zero.
DensestResult densest_weighted_subgraph(const WeightedCompleteGraph& wg);

WeightedCompleteGraph bl_den_weights(const MultilayerGraph& ml, double gamma);
WeightedCompleteGraph bl_sim_weights(const Graph& graph, const EdgeSimilarity& sim, double gamma);

/// Flattened edges induced by the densest node set under the BLDen weights.
EdgeSet bl_den(const MultilayerGraph& ml, const Graph& graph, double gamma);
EdgeSet bl_sim(const Graph& graph, const EdgeSimilarity& sim, double gamma);

/// Edges of `graph` with both endpoints in the sorted node set.
EdgeSet induced_edges(const Graph& graph, std::span<const NodeId> sorted_nodes);

}  // namespace densim

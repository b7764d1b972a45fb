#pragma once

// Multiplex edge-list ingestion, Jaccard edge similarity, dataset statistics
// and random instances.
//
// Input lines are `layer u v [weight]`, whitespace separated; `#` starts a
// comment line and blank lines are skipped. Direction is dropped, repeated
// (layer, u, v) lines collapse and the optional weight is ignored.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "densim/core.hpp"

namespace densim {

using LayerId = std::uint32_t;

struct MultilayerGraph {
  std::vector<std::string> layers;      // first-appearance order
  std::vector<std::string> node_names;  // dense id -> external name
  std::unordered_map<std::string, NodeId> node_index;
  std::vector<Edge> edges;              // flattened, canonical, first-appearance order
  std::vector<std::vector<LayerId>> edge_labels;  // per flattened edge, sorted
  std::vector<std::vector<EdgeId>> layer_edges;   // per layer, sorted

  std::size_t node_count() const { return node_names.size(); }
  Graph flattened() const { return Graph(node_names.size(), edges); }
};

MultilayerGraph parse_multiplex(std::istream& in);
MultilayerGraph parse_multiplex_file(const std::string& path);

/// |A intersect B| / |A union B| for sorted, nonempty label sets.
double jaccard(std::span<const LayerId> a, std::span<const LayerId> b);

struct SimilarityGraph {
  Graph graph;
  EdgeSimilarity similarity;
};

/// Jaccard similarity of the layer labels, materialized only for edge pairs
/// sharing at least one layer.
SimilarityGraph build_similarity(const MultilayerGraph& ml);

struct DatasetStats {
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  std::size_t num_layers = 0;
  double avg_edges_per_layer = 0.0;
  std::size_t num_mult_edges = 0;
  std::size_t num_meta_pairs = 0;
  double density = 0.0;
  double avg_layer_density = 0.0;  // mean over layers of |E_l| / |nodes active in l|
  double similarity = 0.0;         // S(E)
  double avg_edge_participation = 0.0;
};

DatasetStats stats(const MultilayerGraph& ml, const Graph& graph, const EdgeSimilarity& sim);

/// Unordered pairs of flattened edges that share at least one layer.
std::size_t count_meta_pairs(const MultilayerGraph& ml);

struct RandomInstance {
  Graph graph;
  EdgeSimilarity similarity;
};

/// G(n, m) with m distinct edges drawn uniformly; every pair of edges gets,
/// with probability p_sim, a similarity uniform in (0, 1]. Nodes are numbered
/// by first appearance in the edge list, so nodes left without edges vanish.
RandomInstance generate_random(std::size_t n, std::size_t m, double p_sim, std::uint64_t seed);

/// Writes the graph as a single-layer edge list (`0 u v`) using node names
/// (decimal ids when `names` is empty).
void write_edge_list(std::ostream& out, const Graph& graph,
                     const std::vector<std::string>& names = {});

/// Sidecar lines `e_i e_j s` (0-based flattened edge ids, i < j).
void write_similarity(std::ostream& out, const EdgeSimilarity& sim);
EdgeSimilarity read_similarity(std::istream& in, std::size_t edge_count);

}  // namespace densim

#pragma once

// Domain types for mining dense subgraphs whose edges are pairwise similar:
// the graph, the sparse edge-similarity function, edge sets with their node
// cover, exact densities and the two Lagrangian objectives.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace densim {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kIo,
  kDegenerate,
  kMonotonicity,
  kTruncated,
  kInfeasible,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph with dense node and edge indices.
/// Edges are stored canonically (u < v).
class Graph {
 public:
  /// Throws kInvalidArgument on self-loops, duplicate edges, endpoints out of
  /// range, or fewer than two edges.
  Graph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const EdgeId> incident(NodeId v) const {
    return {incident_.data() + offsets_[v], incident_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<EdgeId> incident_;
};

struct WeightedPair {
  std::uint32_t a;  // a < b
  std::uint32_t b;
  double weight;
};

/// Sparse symmetric nonnegative weights over unordered pairs of elements.
/// Zero-weight pairs are never stored. Per-element totals are cached.
class PairWeights {
 public:
  PairWeights() = default;
  /// Pairs may come in any order and orientation; duplicates are rejected,
  /// zero weights are dropped, negative weights and self-pairs throw.
  PairWeights(std::size_t element_count, std::vector<WeightedPair> pairs);

  std::size_t element_count() const noexcept { return totals_.size(); }
  std::size_t pair_count() const noexcept { return pairs_.size(); }
  /// Sorted by (a, b), a < b.
  std::span<const WeightedPair> pairs() const noexcept { return pairs_; }
  double total(std::uint32_t element) const { return totals_[element]; }
  std::span<const double> totals() const noexcept { return totals_; }
  /// Sum over all stored pairs.
  double pair_sum() const noexcept { return pair_sum_; }
  double value(std::uint32_t a, std::uint32_t b) const;
  /// (neighbor, weight) entries of one element, sorted by neighbor.
  std::span<const std::pair<std::uint32_t, double>> neighbors(std::uint32_t element) const {
    return {adjacency_.data() + offsets_[element], adjacency_.data() + offsets_[element + 1]};
  }
  bool empty() const noexcept { return pairs_.empty(); }
  /// Smallest stored (hence nonzero) value; 0 when nothing is stored.
  double min_nonzero() const noexcept { return min_nonzero_; }
  double max_value() const noexcept { return max_value_; }

 private:
  std::vector<WeightedPair> pairs_;
  std::vector<double> totals_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::pair<std::uint32_t, double>> adjacency_;
  double pair_sum_ = 0.0;
  double min_nonzero_ = 0.0;
  double max_value_ = 0.0;
};

using EdgeSimilarity = PairWeights;

/// A set of edges together with the nodes it covers.
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(const Graph& graph, std::vector<EdgeId> members);

  std::span<const EdgeId> members() const noexcept { return members_; }
  std::span<const NodeId> node_cover() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(EdgeId e) const;

 private:
  std::vector<EdgeId> members_;  // sorted, unique
  std::vector<NodeId> nodes_;    // sorted, unique
};

/// Exact density |X| / |V(X)|.
struct Density {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const noexcept {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  /// Cross-multiplied comparison; never touches floating point.
  friend bool operator==(const Density& a, const Density& b) noexcept {
    return a.numerator * b.denominator == b.numerator * a.denominator;
  }
  friend bool operator<(const Density& a, const Density& b) noexcept {
    return a.numerator * b.denominator < b.numerator * a.denominator;
  }
};

struct Solution {
  double lambda = 0.0;
  EdgeSet edge_set;
  double similarity = 0.0;
  Density density;
  double objective_inv = 0.0;
};

Density density(const Graph& graph, const EdgeSet& x);

/// Half of the mean degree inside the induced subgraph; the reference form of
/// density() evaluated from degree sums.
double density_from_degrees(const Graph& graph, const EdgeSet& x);

/// S(X): sum of pairwise similarity over unordered pairs in X divided by |X|;
/// zero when |X| <= 1.
double subgraph_similarity(const EdgeSimilarity& sim, const EdgeSet& x);
double subgraph_similarity(const EdgeSimilarity& sim, std::span<const EdgeId> sorted_members);

/// Sum of pairwise weights over unordered pairs inside a sorted element set.
double internal_pair_sum(const PairWeights& weights, std::span<const std::uint32_t> sorted_members);

double objective_dss(double similarity, const Density& d, double mu);
double objective_dss_inv(double similarity, const Density& d, double lambda);

double map_mu_to_lambda(const Solution& x_star, double mu);
double map_lambda_to_mu(const Solution& x_star, double lambda);

/// Builds a Solution for the given set and lambda, filling S, D and O_lambda.
Solution make_solution(const Graph& graph, const EdgeSimilarity& sim, EdgeSet x, double lambda);

}  // namespace densim

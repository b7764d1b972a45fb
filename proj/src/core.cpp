#include "densim/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace densim {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (edges_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "graph must have at least 2 edges");
  }
  if (edges_.size() > std::numeric_limits<EdgeId>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "too many edges");
  }
  offsets_.assign(node_count_ + 1, 0);
  for (auto& e : edges_) {
    if (e.u == e.v) {
      throw Error(ErrorCode::kInvalidArgument, "self-loop on node " + std::to_string(e.u));
    }
    if (e.u >= node_count_ || e.v >= node_count_) {
      throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate edge");
  }
  for (std::size_t v = 0; v < node_count_; ++v) offsets_[v + 1] += offsets_[v];
  incident_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    incident_[cursor[edges_[e].u]++] = e;
    incident_[cursor[edges_[e].v]++] = e;
  }
}

PairWeights::PairWeights(std::size_t element_count, std::vector<WeightedPair> pairs)
    : totals_(element_count, 0.0) {
  pairs_.reserve(pairs.size());
  for (auto p : pairs) {
    if (p.a == p.b) throw Error(ErrorCode::kInvalidArgument, "pair weight on the diagonal");
    if (p.a >= element_count || p.b >= element_count) {
      throw Error(ErrorCode::kInvalidArgument, "pair element out of range");
    }
    if (!(p.weight >= 0.0) || std::isinf(p.weight)) {
      throw Error(ErrorCode::kInvalidArgument, "pair weights must be finite and nonnegative");
    }
    if (p.weight == 0.0) continue;
    if (p.a > p.b) std::swap(p.a, p.b);
    pairs_.push_back(p);
  }
  std::sort(pairs_.begin(), pairs_.end(), [](const WeightedPair& x, const WeightedPair& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  for (std::size_t i = 1; i < pairs_.size(); ++i) {
    if (pairs_[i].a == pairs_[i - 1].a && pairs_[i].b == pairs_[i - 1].b) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate pair (" + std::to_string(pairs_[i].a) +
                                                   ", " + std::to_string(pairs_[i].b) + ")");
    }
  }

  offsets_.assign(element_count + 1, 0);
  min_nonzero_ = pairs_.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& p : pairs_) {
    ++offsets_[p.a + 1];
    ++offsets_[p.b + 1];
    pair_sum_ += p.weight;
    min_nonzero_ = std::min(min_nonzero_, p.weight);
    max_value_ = std::max(max_value_, p.weight);
  }
  for (std::size_t i = 0; i < element_count; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& p : pairs_) adjacency_[cursor[p.b]++] = {p.a, p.weight};
  for (const auto& p : pairs_) adjacency_[cursor[p.a]++] = {p.b, p.weight};
  for (std::size_t i = 0; i < element_count; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
    double sum = 0.0;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) sum += adjacency_[k].second;
    totals_[i] = sum;
  }
}

double PairWeights::value(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return 0.0;
  auto row = neighbors(a);
  auto it = std::lower_bound(row.begin(), row.end(), b,
                             [](const auto& entry, std::uint32_t key) { return entry.first < key; });
  return (it != row.end() && it->first == b) ? it->second : 0.0;
}

EdgeSet::EdgeSet(const Graph& graph, std::vector<EdgeId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  nodes_.reserve(2 * members_.size());
  for (EdgeId e : members_) {
    if (e >= graph.edge_count()) throw Error(ErrorCode::kInvalidArgument, "edge id out of range");
    nodes_.push_back(graph.edge(e).u);
    nodes_.push_back(graph.edge(e).v);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
}

bool EdgeSet::contains(EdgeId e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

Density density(const Graph& graph, const EdgeSet& x) {
  (void)graph;
  if (x.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "density undefined for empty edge set");
  }
  return {x.size(), x.node_cover().size()};
}

double density_from_degrees(const Graph& graph, const EdgeSet& x) {
  if (x.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "density undefined for empty edge set");
  }
  std::uint64_t degree_sum = 0;
  for (NodeId v : x.node_cover()) {
    for (EdgeId e : graph.incident(v)) degree_sum += x.contains(e) ? 1 : 0;
  }
  return 0.5 * static_cast<double>(degree_sum) / static_cast<double>(x.node_cover().size());
}

double internal_pair_sum(const PairWeights& weights, std::span<const std::uint32_t> sorted_members) {
  double sum = 0.0;
  for (std::uint32_t e : sorted_members) {
    auto row = weights.neighbors(e);
    // Count each unordered pair once, from its smaller element.
    auto it = std::upper_bound(row.begin(), row.end(), e,
                               [](std::uint32_t key, const auto& entry) { return key < entry.first; });
    auto member = std::lower_bound(sorted_members.begin(), sorted_members.end(), e);
    for (; it != row.end(); ++it) {
      member = std::lower_bound(member, sorted_members.end(), it->first);
      if (member == sorted_members.end()) break;
      if (*member == it->first) sum += it->second;
    }
  }
  return sum;
}

double subgraph_similarity(const EdgeSimilarity& sim, std::span<const EdgeId> sorted_members) {
  if (sorted_members.size() <= 1) return 0.0;
  return internal_pair_sum(sim, sorted_members) / static_cast<double>(sorted_members.size());
}

double subgraph_similarity(const EdgeSimilarity& sim, const EdgeSet& x) {
  return subgraph_similarity(sim, x.members());
}

double objective_dss(double similarity, const Density& d, double mu) {
  if (!(mu >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "mu must be nonnegative");
  return similarity + mu * d.value();
}

double objective_dss_inv(double similarity, const Density& d, double lambda) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be nonnegative");
  if (d.numerator == 0) {
    throw Error(ErrorCode::kInvalidArgument, "density undefined for empty edge set");
  }
  return similarity -
         lambda * static_cast<double>(d.denominator) / static_cast<double>(d.numerator);
}

double map_mu_to_lambda(const Solution& x_star, double mu) {
  if (!(mu >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "mu must be nonnegative");
  if (x_star.edge_set.empty()) throw Error(ErrorCode::kInvalidArgument, "empty solution");
  double d = x_star.density.value();
  return d * d * mu;
}

double map_lambda_to_mu(const Solution& x_star, double lambda) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be nonnegative");
  if (x_star.edge_set.empty()) throw Error(ErrorCode::kInvalidArgument, "empty solution");
  double d = x_star.density.value();
  return lambda / (d * d);
}

Solution make_solution(const Graph& graph, const EdgeSimilarity& sim, EdgeSet x, double lambda) {
  Solution s;
  s.lambda = lambda;
  s.density = density(graph, x);
  s.similarity = subgraph_similarity(sim, x);
  s.objective_inv = objective_dss_inv(s.similarity, s.density, lambda);
  s.edge_set = std::move(x);
  return s;
}

}  // namespace densim

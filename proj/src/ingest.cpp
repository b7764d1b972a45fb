#include "densim/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <optional>
#include <unordered_set>

namespace densim {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool is_skippable(const std::vector<std::string_view>& fields) {
  return fields.empty() || fields.front().front() == '#';
}

[[noreturn]] void parse_error(std::size_t line_number, const std::string& what) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line_number) + ": " + what);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::uint64_t edge_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// First layer shared by two sorted label sets, if any.
std::optional<LayerId> first_common(std::span<const LayerId> a, std::span<const LayerId> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return *i;
    if (*i < *j) ++i; else ++j;
  }
  return std::nullopt;
}

// Visits every unordered pair of flattened edges sharing a layer exactly once,
// from the first layer the two share.
template <typename Visit>
void for_each_meta_pair(const MultilayerGraph& ml, Visit&& visit) {
  for (LayerId layer = 0; layer < ml.layer_edges.size(); ++layer) {
    const auto& bucket = ml.layer_edges[layer];
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      for (std::size_t j = i + 1; j < bucket.size(); ++j) {
        EdgeId a = bucket[i];
        EdgeId b = bucket[j];
        if (first_common(ml.edge_labels[a], ml.edge_labels[b]) == layer) visit(a, b);
      }
    }
  }
}

}  // namespace

MultilayerGraph parse_multiplex(std::istream& in) {
  MultilayerGraph ml;
  std::unordered_map<std::string, LayerId> layer_index;
  std::unordered_map<std::uint64_t, EdgeId> edge_index;
  auto intern_node = [&](std::string_view name) {
    auto [it, inserted] = ml.node_index.try_emplace(std::string(name),
                                                     static_cast<NodeId>(ml.node_names.size()));
    if (inserted) ml.node_names.emplace_back(name);
    return it->second;
  };

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto fields = split_fields(line);
    if (is_skippable(fields)) continue;
    if (fields.size() != 3 && fields.size() != 4) {
      parse_error(line_number, "expected 'layer u v [weight]', got " +
                                   std::to_string(fields.size()) + " fields");
    }
    if (fields.size() == 4) {
      double weight = 0.0;
      if (!parse_number(fields[3], weight)) parse_error(line_number, "malformed weight");
    }
    if (fields[1] == fields[2]) {
      parse_error(line_number, "self-loop on node '" + std::string(fields[1]) + "'");
    }
    auto [layer_it, new_layer] =
        layer_index.try_emplace(std::string(fields[0]), static_cast<LayerId>(ml.layers.size()));
    if (new_layer) ml.layers.emplace_back(fields[0]);
    LayerId layer = layer_it->second;
    NodeId u = intern_node(fields[1]);
    NodeId v = intern_node(fields[2]);
    if (u > v) std::swap(u, v);
    auto [edge_it, new_edge] =
        edge_index.try_emplace(edge_key(u, v), static_cast<EdgeId>(ml.edges.size()));
    if (new_edge) {
      ml.edges.push_back({u, v});
      ml.edge_labels.emplace_back();
    }
    auto& labels = ml.edge_labels[edge_it->second];
    auto pos = std::lower_bound(labels.begin(), labels.end(), layer);
    if (pos == labels.end() || *pos != layer) labels.insert(pos, layer);
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read error");
  if (ml.edges.size() < 2) {
    throw Error(ErrorCode::kDegenerate, "input has fewer than 2 distinct edges");
  }

  ml.layer_edges.assign(ml.layers.size(), {});
  for (EdgeId e = 0; e < ml.edges.size(); ++e) {
    for (LayerId l : ml.edge_labels[e]) ml.layer_edges[l].push_back(e);
  }
  return ml;
}

MultilayerGraph parse_multiplex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return parse_multiplex(in);
}

double jaccard(std::span<const LayerId> a, std::span<const LayerId> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kInvalidArgument, "empty label set");
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) {
      ++common;
      ++i;
      ++j;
    } else if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

SimilarityGraph build_similarity(const MultilayerGraph& ml) {
  std::vector<WeightedPair> pairs;
  for_each_meta_pair(ml, [&](EdgeId a, EdgeId b) {
    pairs.push_back({a, b, jaccard(ml.edge_labels[a], ml.edge_labels[b])});
  });
  return {ml.flattened(), EdgeSimilarity(ml.edges.size(), std::move(pairs))};
}

std::size_t count_meta_pairs(const MultilayerGraph& ml) {
  std::size_t count = 0;
  for_each_meta_pair(ml, [&](EdgeId, EdgeId) { ++count; });
  return count;
}

DatasetStats stats(const MultilayerGraph& ml, const Graph& graph, const EdgeSimilarity& sim) {
  DatasetStats s;
  s.num_nodes = graph.node_count();
  s.num_edges = graph.edge_count();
  s.num_layers = ml.layers.size();
  for (const auto& bucket : ml.layer_edges) s.num_mult_edges += bucket.size();
  s.avg_edges_per_layer =
      s.num_layers ? static_cast<double>(s.num_mult_edges) / static_cast<double>(s.num_layers) : 0.0;
  s.num_meta_pairs = count_meta_pairs(ml);
  s.density = static_cast<double>(s.num_edges) / static_cast<double>(s.num_nodes);

  double layer_density_sum = 0.0;
  std::vector<std::uint32_t> seen(graph.node_count(), 0);
  for (LayerId l = 0; l < ml.layer_edges.size(); ++l) {
    std::size_t active = 0;
    for (EdgeId e : ml.layer_edges[l]) {
      for (NodeId v : {graph.edge(e).u, graph.edge(e).v}) {
        if (seen[v] != l + 1) {
          seen[v] = l + 1;
          ++active;
        }
      }
    }
    if (active > 0) {
      layer_density_sum += static_cast<double>(ml.layer_edges[l].size()) / static_cast<double>(active);
    }
  }
  s.avg_layer_density = s.num_layers ? layer_density_sum / static_cast<double>(s.num_layers) : 0.0;
  s.similarity = sim.pair_sum() / static_cast<double>(s.num_edges);
  s.avg_edge_participation =
      static_cast<double>(s.num_mult_edges) / static_cast<double>(s.num_edges);
  return s;
}

RandomInstance generate_random(std::size_t n, std::size_t m, double p_sim, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 nodes");
  const std::uint64_t node_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m < 2 || m > node_pairs) {
    throw Error(ErrorCode::kInvalidArgument,
                "infeasible G(n, m): need 2 <= m <= n(n-1)/2 = " + std::to_string(node_pairs));
  }
  if (!(p_sim >= 0.0 && p_sim <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "similarity probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Floyd's sampling of m distinct indices in [0, node_pairs).
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  for (std::uint64_t j = node_pairs - m; j < node_pairs; ++j) {
    std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> indices(chosen.begin(), chosen.end());
  std::sort(indices.begin(), indices.end());

  std::vector<Edge> edges;
  edges.reserve(m);
  std::vector<NodeId> relabel(n, static_cast<NodeId>(-1));
  NodeId next_label = 0;
  auto label = [&](std::uint64_t v) {
    if (relabel[v] == static_cast<NodeId>(-1)) relabel[v] = next_label++;
    return relabel[v];
  };
  std::uint64_t row = 0;
  std::uint64_t row_start = 0;  // index of pair (row, row + 1)
  for (std::uint64_t k : indices) {
    while (k >= row_start + (n - 1 - row)) {
      row_start += n - 1 - row;
      ++row;
    }
    NodeId u = label(row);
    NodeId v = label(row + 1 + (k - row_start));
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  Graph graph(next_label, std::move(edges));

  // Walk the m(m-1)/2 edge pairs with geometric gaps.
  std::vector<WeightedPair> pairs;
  const std::uint64_t edge_pairs = static_cast<std::uint64_t>(m) * (m - 1) / 2;
  if (p_sim > 0.0) {
    const double log_miss = std::log1p(-p_sim);
    std::uint64_t next = 0;  // first candidate index not yet decided
    std::uint64_t a = 0;
    std::uint64_t a_start = 0;  // index of pair (a, a + 1)
    while (next < edge_pairs) {
      if (p_sim < 1.0) {
        double gap = std::floor(std::log(1.0 - unit(rng)) / log_miss);
        if (gap >= static_cast<double>(edge_pairs - next)) break;
        next += static_cast<std::uint64_t>(gap);
      }
      while (next >= a_start + (m - 1 - a)) {
        a_start += m - 1 - a;
        ++a;
      }
      std::uint64_t b = a + 1 + (next - a_start);
      pairs.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                       1.0 - unit(rng)});
      ++next;
    }
  }
  return {std::move(graph), EdgeSimilarity(m, std::move(pairs))};
}

void write_edge_list(std::ostream& out, const Graph& graph, const std::vector<std::string>& names) {
  out << "# layer u v\n";
  for (const auto& e : graph.edges()) {
    if (names.empty()) {
      out << "0 " << e.u << ' ' << e.v << '\n';
    } else {
      out << "0 " << names[e.u] << ' ' << names[e.v] << '\n';
    }
  }
}

void write_similarity(std::ostream& out, const EdgeSimilarity& sim) {
  out << "# e_i e_j s\n";
  char buffer[64];
  for (const auto& p : sim.pairs()) {
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, p.weight);
    out << p.a << ' ' << p.b << ' ' << std::string_view(buffer, static_cast<std::size_t>(end - buffer))
        << '\n';
  }
}

EdgeSimilarity read_similarity(std::istream& in, std::size_t edge_count) {
  std::vector<WeightedPair> pairs;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto fields = split_fields(line);
    if (is_skippable(fields)) continue;
    if (fields.size() != 3) parse_error(line_number, "expected 'e_i e_j s'");
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double s = 0.0;
    if (!parse_number(fields[0], a) || !parse_number(fields[1], b) || !parse_number(fields[2], s)) {
      parse_error(line_number, "malformed similarity line");
    }
    if (a >= edge_count || b >= edge_count) parse_error(line_number, "edge id out of range");
    if (a == b) parse_error(line_number, "similarity of an edge with itself");
    if (!(s >= 0.0) || !std::isfinite(s)) parse_error(line_number, "similarity must be nonnegative");
    pairs.push_back({a, b, s});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read error");
  try {
    return EdgeSimilarity(edge_count, std::move(pairs));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

}  // namespace densim

#include "densim/qsolver.hpp"

#include <algorithm>
#include <cmath>

namespace densim {

void validate(const QInstance& q) {
  if (q.weights == nullptr) throw Error(ErrorCode::kInvalidArgument, "QInstance without weights");
  if (!(q.node_penalty >= 0.0) || !std::isfinite(q.node_penalty)) {
    throw Error(ErrorCode::kInvalidArgument, "node penalty must be finite and nonnegative");
  }
  if (!std::isfinite(q.c)) throw Error(ErrorCode::kInvalidArgument, "c must be finite");
  if (q.cover != nullptr && q.cover->edge_count() != q.weights->element_count()) {
    throw Error(ErrorCode::kInvalidArgument, "cover graph does not match the element count");
  }
  if (q.cover == nullptr && q.node_penalty != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "node penalty requires a cover");
  }
}

QFlowGraph build_flow_graph(const QInstance& q) {
  validate(q);
  const std::size_t n = q.element_count();
  const std::size_t cover_nodes = q.cover ? q.cover->node_count() : 0;
  QFlowGraph g{FlowNetwork(2 + n + cover_nodes, 0, 1), 0, 1, {}, {}, {}, {}, {}, {}};
  g.element_node.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.element_node[i] = static_cast<FlowNode>(2 + i);
  g.cover_node.resize(cover_nodes);
  for (std::size_t v = 0; v < cover_nodes; ++v) g.cover_node[v] = static_cast<FlowNode>(2 + n + v);

  g.source_arc.reserve(n);
  g.deficit_arc.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double shifted = 0.5 * q.weights->total(static_cast<std::uint32_t>(i)) - q.c;
    g.source_arc.push_back(g.network.add_arc(g.source, g.element_node[i], std::max(0.0, shifted)));
    g.deficit_arc.push_back(g.network.add_arc(g.element_node[i], g.sink, std::max(0.0, -shifted)));
    g.network.mark_parametric(g.source_arc.back());
    g.network.mark_parametric(g.deficit_arc.back());
  }
  g.pair_arc.reserve(q.weights->pair_count());
  for (const auto& p : q.weights->pairs()) {
    double half = 0.5 * p.weight;
    g.pair_arc.push_back(g.network.add_arc(g.element_node[p.a], g.element_node[p.b], half, half));
  }
  if (q.cover != nullptr) {
    for (std::size_t i = 0; i < n; ++i) {
      const Edge& e = q.cover->edge(static_cast<EdgeId>(i));
      g.network.add_infinite_arc(g.element_node[i], g.cover_node[e.u]);
      g.network.add_infinite_arc(g.element_node[i], g.cover_node[e.v]);
    }
    g.penalty_arc.reserve(cover_nodes);
    for (std::size_t v = 0; v < cover_nodes; ++v) {
      g.penalty_arc.push_back(g.network.add_arc(g.cover_node[v], g.sink, q.node_penalty));
    }
  }
  return g;
}

double evaluate_q(const QInstance& q, std::span<const std::uint32_t> sorted_selection) {
  double value = internal_pair_sum(*q.weights, sorted_selection) -
                 q.c * static_cast<double>(sorted_selection.size());
  if (q.cover != nullptr && !sorted_selection.empty()) {
    std::vector<NodeId> nodes;
    nodes.reserve(2 * sorted_selection.size());
    for (auto e : sorted_selection) {
      nodes.push_back(q.cover->edge(e).u);
      nodes.push_back(q.cover->edge(e).v);
    }
    std::sort(nodes.begin(), nodes.end());
    auto distinct = std::unique(nodes.begin(), nodes.end()) - nodes.begin();
    value -= q.node_penalty * static_cast<double>(distinct);
  }
  return value;
}

namespace {

QSolution read_solution(const QInstance& q, const QFlowGraph& g, const CutResult& cut) {
  QSolution s;
  const std::size_t n = q.element_count();
  for (std::size_t i = 0; i < n; ++i) {
    if (cut.in_source_side[g.element_node[i]]) s.selected.push_back(static_cast<std::uint32_t>(i));
  }
  double negative_part = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    negative_part += std::min(0.0, 0.5 * q.weights->total(static_cast<std::uint32_t>(i)) - q.c);
  }
  s.cut_value = cut.cut_value + negative_part;
  s.q_value = -s.cut_value + q.weights->pair_sum() - q.c * static_cast<double>(n);
  return s;
}

}  // namespace

QSolution solve_q(const QInstance& q) {
  QFlowGraph g = build_flow_graph(q);
  return read_solution(q, g, g.network.min_cut());
}

ParametricQSolver::ParametricQSolver(const QInstance& q, bool reuse_flow)
    : q_(q), graph_(build_flow_graph(q)), reuse_flow_(reuse_flow) {}

QSolution ParametricQSolver::solve(double c) {
  if (!std::isfinite(c)) throw Error(ErrorCode::kInvalidArgument, "c must be finite");
  if (c < q_.c) {
    throw Error(ErrorCode::kMonotonicity, "monotonicity violated: c must not decrease");
  }
  if (c != q_.c) {
    q_.c = c;
    const std::size_t n = q_.element_count();
    updates_.clear();
    for (std::size_t i = 0; i < n; ++i) {
      double shifted = 0.5 * q_.weights->total(static_cast<std::uint32_t>(i)) - c;
      updates_.push_back({graph_.source_arc[i], std::max(0.0, shifted)});
      updates_.push_back({graph_.deficit_arc[i], std::max(0.0, -shifted)});
    }
    graph_.network.update_parametric(updates_);
  }
  ++solves_;
  CutResult cut = reuse_flow_ ? graph_.network.min_cut() : graph_.network.min_cut_from_scratch();
  return read_solution(q_, graph_, cut);
}

}  // namespace densim

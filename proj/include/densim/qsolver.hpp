#pragma once

// The linearized subproblem of the ratio maximization,
//
//   Q(X | c) = sum of pair weights inside X - penalty * |cover(X)| - c * |X|,
//
// solved exactly as a minimum cut. Elements become flow nodes joined by
// bidirectional arcs of half their pair weight; when a cover is present each
// element points with an infinite arc at the nodes it covers, which drain to
// the sink at the penalty rate.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "densim/core.hpp"
#include "densim/mincut.hpp"

namespace densim {

struct QInstance {
  const PairWeights* weights = nullptr;
  /// When set, element i covers the two endpoints of edge i of this graph.
  const Graph* cover = nullptr;
  double node_penalty = 0.0;
  double c = 0.0;

  std::size_t element_count() const { return weights->element_count(); }
};

struct QSolution {
  std::vector<std::uint32_t> selected;  // sorted
  /// Optimal Q, recovered from the cut through the identity
  /// Q* = -C* + (sum of all pair weights) - c * element_count.
  double q_value = 0.0;
  /// Value of the minimum cut in the unshifted network (source arcs of weight
  /// half-total minus c, possibly negative).
  double cut_value = 0.0;
};

/// The flow network for one QInstance and the ids needed to move c.
struct QFlowGraph {
  FlowNetwork network;
  FlowNode source;
  FlowNode sink;
  std::vector<FlowNode> element_node;  // per element
  std::vector<FlowNode> cover_node;    // per graph node; empty without cover
  std::vector<ArcId> source_arc;       // s -> element, capacity max(0, half_total - c)
  std::vector<ArcId> deficit_arc;      // element -> t, capacity max(0, c - half_total)
  std::vector<ArcId> pair_arc;
  std::vector<ArcId> penalty_arc;      // cover node -> t
};

/// Checks the instance and throws kInvalidArgument when it is unusable.
void validate(const QInstance& q);

/// Source arcs whose capacity would be negative are replaced by an arc of the
/// opposite sign from the element to the sink. Both arcs exist for every
/// element (one of them with zero capacity) and both are parametric.
QFlowGraph build_flow_graph(const QInstance& q);

double evaluate_q(const QInstance& q, std::span<const std::uint32_t> sorted_selection);

QSolution solve_q(const QInstance& q);

/// Re-solves Q for a nondecreasing sequence of c on a single flow network,
/// reusing the flow between solves.
class ParametricQSolver {
 public:
  /// `q.c` is the first value of c.
  explicit ParametricQSolver(const QInstance& q, bool reuse_flow = true);

  /// `c` must not be smaller than the previous value.
  QSolution solve(double c);
  const QFlowGraph& flow_graph() const { return graph_; }
  std::size_t solves() const { return solves_; }

 private:
  QInstance q_;
  QFlowGraph graph_;
  bool reuse_flow_;
  std::size_t solves_ = 0;
  std::vector<ParametricUpdate> updates_;
};

}  // namespace densim

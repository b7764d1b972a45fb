#pragma once

// Dinkelbach-style fractional programming: maximize
//
//   ratio(X) = (pair weight inside X - penalty * |cover(X)|) / |X|
//
// over nonempty X by repeatedly solving the linearized problem
// Q(X | c) = numerator(X) - c * |X| with c set to the ratio of the previous
// iterate, until the best Q is zero. For edge similarities with the node
// cover penalty lambda the ratio is exactly S(X) - lambda / D(X).

#include <cstdint>
#include <vector>

#include "densim/core.hpp"

namespace densim {

struct FpOptions {
  /// Termination threshold on Q; nonpositive selects
  /// 1e-9 * max(1, sum of pair weights).
  double tol = 0.0;
  /// Reuse the flow between the min-cut solves of one run.
  bool reuse_flow = true;
};

struct FpIteration {
  double c;                   // ratio of the current iterate
  std::size_t set_size;       // size of the current iterate
  double q_value;             // best Q at this c
};

struct FpTrace {
  std::vector<FpIteration> iterations;
  bool converged = false;
  /// Min-cut problems solved (one per iteration).
  std::size_t mincut_solves() const { return iterations.size(); }
};

struct RatioResult {
  std::vector<std::uint32_t> selected;  // sorted, nonempty
  double ratio = 0.0;
  FpTrace trace;
};

/// Numerator of the ratio for a sorted selection.
double ratio_numerator(const PairWeights& weights, const Graph* cover, double node_penalty,
                       std::span<const std::uint32_t> sorted_selection);

RatioResult maximize_ratio(const PairWeights& weights, const Graph* cover, double node_penalty,
                           const FpOptions& options = {});

struct DssInvResult {
  Solution solution;
  FpTrace trace;
};

/// Maximizes S(X) - lambda / D(X) over nonempty edge sets.
DssInvResult solve_dss_inv(const Graph& graph, const EdgeSimilarity& sim, double lambda,
                           const FpOptions& options = {});

}  // namespace densim

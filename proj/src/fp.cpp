#include "densim/fp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "densim/qsolver.hpp"

namespace densim {

double ratio_numerator(const PairWeights& weights, const Graph* cover, double node_penalty,
                       std::span<const std::uint32_t> sorted_selection) {
  QInstance q{&weights, cover, node_penalty, 0.0};
  return evaluate_q(q, sorted_selection);
}

RatioResult maximize_ratio(const PairWeights& weights, const Graph* cover, double node_penalty,
                           const FpOptions& options) {
  const std::size_t n = weights.element_count();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "nothing to select");
  const double tol =
      options.tol > 0.0 ? options.tol : 1e-9 * std::max(1.0, weights.pair_sum());
  const double penalty_scale = cover ? node_penalty * static_cast<double>(cover->node_count()) : 0.0;

  RatioResult result;
  result.selected.resize(n);
  std::iota(result.selected.begin(), result.selected.end(), 0u);
  double c = ratio_numerator(weights, cover, node_penalty, result.selected) / static_cast<double>(n);

  ParametricQSolver solver(QInstance{&weights, cover, node_penalty, c}, options.reuse_flow);
  for (std::size_t iteration = 0; iteration <= n; ++iteration) {
    QSolution q = solver.solve(c);
    double q_value = q.selected.empty()
                         ? 0.0
                         : evaluate_q(QInstance{&weights, cover, node_penalty, c}, q.selected);
    result.trace.iterations.push_back({c, result.selected.size(), q_value});

    // Below this, Q is indistinguishable from rounding noise in its terms.
    const double noise =
        1e-12 * (weights.pair_sum() + penalty_scale + std::abs(c) * static_cast<double>(n));
    if (q.selected.empty() || q_value <= std::max(tol, noise)) {
      result.trace.converged = true;
      break;
    }
    double next = ratio_numerator(weights, cover, node_penalty, q.selected) /
                  static_cast<double>(q.selected.size());
    if (!(next > c)) {
      result.trace.converged = true;
      break;
    }
    result.selected = std::move(q.selected);
    c = next;
  }
  result.ratio = c;
  return result;
}

DssInvResult solve_dss_inv(const Graph& graph, const EdgeSimilarity& sim, double lambda,
                           const FpOptions& options) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be finite and nonnegative");
  }
  if (sim.element_count() != graph.edge_count()) {
    throw Error(ErrorCode::kInvalidArgument, "similarity does not match the graph's edges");
  }
  RatioResult r = maximize_ratio(sim, &graph, lambda, options);
  DssInvResult out;
  out.solution = make_solution(graph, sim, EdgeSet(graph, std::move(r.selected)), lambda);
  out.trace = std::move(r.trace);
  return out;
}

}  // namespace densim

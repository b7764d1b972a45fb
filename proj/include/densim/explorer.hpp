#pragma once

// Enumeration of every distinct (S, D) optimum across lambda.
//
// Optimal S never increases and optimal D never decreases with lambda, so if
// both ends of a lambda interval give the same (S, D) the whole interval does
// and it can be dropped. The search bisects the remaining intervals in
// breadth-first order between the bounds returned by lambda_bounds().

#include <cstdint>
#include <optional>
#include <vector>

#include "densim/core.hpp"
#include "densim/fp.hpp"

namespace densim {

struct LambdaBounds {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double delta_lambda = 0.0;
  double s_min = 0.0;
  double s_max = 0.0;

  /// (lambda_max - lambda_min) / delta_lambda: the most lambda values a full
  /// search can need.
  double evaluation_bound() const { return (lambda_max - lambda_min) / delta_lambda; }
};

/// Throws kDegenerate when no pair has nonzero similarity.
LambdaBounds lambda_bounds(const Graph& graph, const EdgeSimilarity& sim);

/// Same density (exactly) and S equal to within 1e-9 relative.
bool signature_equal(const Solution& a, const Solution& b);

struct ExploreOptions {
  /// Maximum number of lambda values to evaluate.
  std::optional<std::size_t> budget;
  /// Stop once this many distinct solutions are known.
  std::optional<std::size_t> max_solutions;
  /// Worker threads for the intervals of one breadth-first level.
  unsigned jobs = 1;
  FpOptions fp;
};

struct LambdaEvaluation {
  double lambda;
  double similarity;
  Density density;
  std::size_t mincut_solves;
  std::size_t catalog_size;  // distinct solutions known after this evaluation
};

struct SolutionCatalog {
  LambdaBounds bounds;
  /// Sorted by lambda; pairwise distinct signatures.
  std::vector<Solution> solutions;
  /// Evaluations in the order they were merged.
  std::vector<LambdaEvaluation> evaluations;
  bool truncated = false;

  std::size_t tested_lambdas() const { return evaluations.size(); }
  std::size_t mincut_solves() const;
};

SolutionCatalog explore(const Graph& graph, const EdgeSimilarity& sim,
                        const ExploreOptions& options = {});

/// Best catalog entry for S + mu * D; ties go to the larger density.
/// Throws kTruncated on a catalog from an interrupted search.
const Solution& solve_dss(const SolutionCatalog& catalog, double mu);

/// Catalog sorted by lambda has S non-increasing and D strictly increasing
/// with S strictly decreasing between neighbours.
bool catalog_is_monotone(const SolutionCatalog& catalog);

}  // namespace densim

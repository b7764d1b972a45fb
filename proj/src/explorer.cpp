#include "densim/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <thread>

namespace densim {

LambdaBounds lambda_bounds(const Graph& graph, const EdgeSimilarity& sim) {
  if (sim.empty()) throw Error(ErrorCode::kDegenerate, "no nonzero similarities");
  const double m = static_cast<double>(graph.edge_count());
  LambdaBounds b;
  b.s_min = sim.min_nonzero();
  b.s_max = sim.max_value();
  b.lambda_min = b.s_min / (2.0 * m);
  b.lambda_max = b.s_max * m * m / 2.0;
  b.delta_lambda = b.s_min / (2.0 * m);
  return b;
}

bool signature_equal(const Solution& a, const Solution& b) {
  return a.density == b.density &&
         std::abs(a.similarity - b.similarity) <= 1e-9 * std::max(1.0, std::abs(a.similarity));
}

std::size_t SolutionCatalog::mincut_solves() const {
  std::size_t total = 0;
  for (const auto& e : evaluations) total += e.mincut_solves;
  return total;
}

namespace {

struct Interval {
  double lo;
  double hi;
  std::size_t lo_result;  // indices into the evaluated results
  std::size_t hi_result;
};

struct Evaluated {
  Solution solution;
  std::size_t mincut_solves;
};

class Explorer {
 public:
  Explorer(const Graph& graph, const EdgeSimilarity& sim, const ExploreOptions& options)
      : graph_(graph), sim_(sim), options_(options) {
    catalog_.bounds = lambda_bounds(graph, sim);
  }

  SolutionCatalog run() {
    const auto& b = catalog_.bounds;
    if (!has_budget(1)) return finish(true);
    std::size_t low = evaluate_and_record(b.lambda_min);
    add_to_catalog(low);
    if (!has_budget(1) || target_reached()) return finish(true);
    std::size_t high = evaluate_and_record(b.lambda_max);
    std::deque<Interval> queue;
    if (!same(low, high)) {
      add_to_catalog(high);
      queue.push_back({b.lambda_min, b.lambda_max, low, high});
    }

    while (!queue.empty()) {
      if (target_reached() || !has_budget(1)) return finish(true);
      // One breadth-first level; later pushes belong to the next level.
      std::size_t take = queue.size();
      if (options_.budget) take = std::min(take, *options_.budget - catalog_.evaluations.size());
      std::vector<Interval> level(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(take));
      queue.erase(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(take));

      std::vector<double> midpoints;
      midpoints.reserve(level.size());
      for (const auto& iv : level) midpoints.push_back(0.5 * (iv.lo + iv.hi));
      std::vector<Evaluated> solved = evaluate_all(midpoints);

      for (std::size_t i = 0; i < level.size(); ++i) {
        const auto& iv = level[i];
        std::size_t mid = record(midpoints[i], std::move(solved[i]));
        bool differs_low = !same(mid, iv.lo_result);
        bool differs_high = !same(mid, iv.hi_result);
        double half = 0.5 * (iv.hi - iv.lo);
        // A solution confined to a sub-interval narrower than the granularity
        // bound would contradict it, so such sub-intervals are not split.
        bool splittable = half >= b.delta_lambda;
        if (differs_low && splittable) queue.push_back({iv.lo, midpoints[i], iv.lo_result, mid});
        if (differs_high && splittable) queue.push_back({midpoints[i], iv.hi, mid, iv.hi_result});
        if (differs_low && differs_high) add_to_catalog(mid);
        catalog_.evaluations.back().catalog_size = catalog_.solutions.size();
        if (target_reached() && i + 1 < level.size()) {
          // Remaining evaluations of this level were computed but not merged.
          return finish(true);
        }
      }
    }
    return finish(false);
  }

 private:
  bool has_budget(std::size_t n) const {
    return !options_.budget || catalog_.evaluations.size() + n <= *options_.budget;
  }
  bool target_reached() const {
    return options_.max_solutions && catalog_.solutions.size() >= *options_.max_solutions;
  }

  Evaluated evaluate(double lambda) const {
    DssInvResult r = solve_dss_inv(graph_, sim_, lambda, options_.fp);
    return {std::move(r.solution), r.trace.mincut_solves()};
  }

  std::vector<Evaluated> evaluate_all(const std::vector<double>& lambdas) const {
    std::vector<Evaluated> out(lambdas.size());
    unsigned workers = std::max(1u, std::min<unsigned>(options_.jobs,
                                                       static_cast<unsigned>(lambdas.size())));
    if (workers <= 1) {
      for (std::size_t i = 0; i < lambdas.size(); ++i) out[i] = evaluate(lambdas[i]);
      return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < lambdas.size(); i += workers) out[i] = evaluate(lambdas[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    return out;
  }

  std::size_t record(double lambda, Evaluated e) {
    catalog_.evaluations.push_back({lambda, e.solution.similarity, e.solution.density,
                                    e.mincut_solves, catalog_.solutions.size()});
    results_.push_back(std::move(e.solution));
    return results_.size() - 1;
  }

  std::size_t evaluate_and_record(double lambda) {
    std::size_t idx = record(lambda, evaluate(lambda));
    return idx;
  }

  bool same(std::size_t a, std::size_t b) const { return signature_equal(results_[a], results_[b]); }

  void add_to_catalog(std::size_t idx) {
    catalog_.solutions.push_back(results_[idx]);
    catalog_.evaluations.back().catalog_size = catalog_.solutions.size();
  }

  SolutionCatalog finish(bool interrupted) {
    auto& sols = catalog_.solutions;
    std::stable_sort(sols.begin(), sols.end(),
                     [](const Solution& a, const Solution& b) { return a.lambda < b.lambda; });
    std::vector<Solution> unique;
    for (auto& s : sols) {
      bool seen = std::any_of(unique.begin(), unique.end(),
                              [&](const Solution& u) { return signature_equal(u, s); });
      if (!seen) unique.push_back(std::move(s));
    }
    sols = std::move(unique);
    catalog_.truncated = interrupted;
    return std::move(catalog_);
  }

  const Graph& graph_;
  const EdgeSimilarity& sim_;
  ExploreOptions options_;
  SolutionCatalog catalog_;
  std::vector<Solution> results_;
};

}  // namespace

SolutionCatalog explore(const Graph& graph, const EdgeSimilarity& sim,
                        const ExploreOptions& options) {
  if (options.budget && *options.budget == 0) {
    throw Error(ErrorCode::kInvalidArgument, "budget must allow at least one evaluation");
  }
  return Explorer(graph, sim, options).run();
}

const Solution& solve_dss(const SolutionCatalog& catalog, double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::kInvalidArgument, "mu must be finite and nonnegative");
  }
  if (catalog.truncated) {
    throw Error(ErrorCode::kTruncated,
                "catalog is from an interrupted search; run a full exploration first");
  }
  if (catalog.solutions.empty()) throw Error(ErrorCode::kInvalidArgument, "empty catalog");
  const Solution* best = &catalog.solutions.front();
  double best_value = objective_dss(best->similarity, best->density, mu);
  for (const auto& s : catalog.solutions) {
    double v = objective_dss(s.similarity, s.density, mu);
    if (v > best_value || (v == best_value && best->density < s.density)) {
      best = &s;
      best_value = v;
    }
  }
  return *best;
}

bool catalog_is_monotone(const SolutionCatalog& catalog) {
  const auto& s = catalog.solutions;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i - 1].lambda <= s[i].lambda)) return false;
    if (!(s[i - 1].density < s[i].density)) return false;
    if (!(s[i - 1].similarity > s[i].similarity)) return false;
  }
  return true;
}

}  // namespace densim

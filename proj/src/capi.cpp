#include "densim/densim.h"

#include <cmath>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "densim/baselines.hpp"
#include "densim/core.hpp"
#include "densim/explorer.hpp"
#include "densim/fp.hpp"
#include "densim/ingest.hpp"
#include "densim/qsolver.hpp"

struct densim_dataset {
  densim::MultilayerGraph ml;
  densim::Graph graph;
  densim::EdgeSimilarity sim;
};

struct densim_catalog {
  densim::SolutionCatalog catalog;
};

struct densim_solution {
  densim::Solution solution;
};

namespace {

thread_local std::string last_error;

densim_status status_of(densim::ErrorCode code) {
  using densim::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return DENSIM_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse: return DENSIM_ERR_PARSE;
    case ErrorCode::kIo: return DENSIM_ERR_IO;
    case ErrorCode::kDegenerate: return DENSIM_ERR_DEGENERATE;
    case ErrorCode::kMonotonicity: return DENSIM_ERR_MONOTONICITY;
    case ErrorCode::kTruncated: return DENSIM_ERR_TRUNCATED;
    case ErrorCode::kInfeasible: return DENSIM_ERR_INFEASIBLE;
  }
  return DENSIM_ERR_INTERNAL;
}

densim_status fail(densim_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into a status and the thread's message.
template <class Body>
densim_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return DENSIM_OK;
  } catch (const densim::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DENSIM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DENSIM_ERR_INTERNAL, e.what());
  }
}

densim_dataset* make_dataset(densim::MultilayerGraph ml, std::optional<densim::EdgeSimilarity> sim) {
  densim::Graph graph = ml.flattened();
  if (!sim) sim = densim::build_similarity(ml).similarity;
  return new densim_dataset{std::move(ml), std::move(graph), std::move(*sim)};
}

void copy_bounds(const densim::LambdaBounds& b, densim_bounds* out) {
  *out = {b.lambda_min, b.lambda_max, b.delta_lambda, b.s_min, b.s_max};
}

densim_solution* wrap(densim::Solution s) { return new densim_solution{std::move(s)}; }

}  // namespace

extern "C" {

const char* densim_last_error(void) { return last_error.c_str(); }

const char* densim_status_name(densim_status status) {
  switch (status) {
    case DENSIM_OK: return "ok";
    case DENSIM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DENSIM_ERR_IO: return "i/o error";
    case DENSIM_ERR_DEGENERATE: return "degenerate input";
    case DENSIM_ERR_USAGE: return "usage error";
    case DENSIM_ERR_PARSE: return "parse error";
    case DENSIM_ERR_MONOTONICITY: return "monotonicity violated";
    case DENSIM_ERR_TRUNCATED: return "truncated catalog";
    case DENSIM_ERR_INFEASIBLE: return "infeasible";
    case DENSIM_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

densim_status densim_dataset_load(const char* edges_path, const char* sim_path,
                                  densim_dataset** out) {
  if (!edges_path || !out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    densim::MultilayerGraph ml = densim::parse_multiplex_file(edges_path);
    std::optional<densim::EdgeSimilarity> sim;
    if (sim_path) {
      std::ifstream in(sim_path);
      if (!in) throw densim::Error(densim::ErrorCode::kIo, std::string("cannot open ") + sim_path);
      sim = densim::read_similarity(in, ml.edges.size());
    }
    *out = make_dataset(std::move(ml), std::move(sim));
  });
}

densim_status densim_dataset_parse(const char* edges_text, densim_dataset** out) {
  if (!edges_text || !out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::istringstream in(edges_text);
    *out = make_dataset(densim::parse_multiplex(in), std::nullopt);
  });
}

densim_status densim_dataset_generate(size_t nodes, size_t edges, double p_sim, uint64_t seed,
                                      densim_dataset** out) {
  if (!out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    densim::RandomInstance inst = densim::generate_random(nodes, edges, p_sim, seed);
    // Going through the edge-list text keeps generated datasets identical to
    // what loading the written files gives back.
    std::stringstream text;
    densim::write_edge_list(text, inst.graph);
    *out = make_dataset(densim::parse_multiplex(text), std::move(inst.similarity));
  });
}

densim_status densim_dataset_write(const densim_dataset* ds, const char* edges_path,
                                   const char* sim_path) {
  if (!ds || !edges_path) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::ofstream edges(edges_path);
    if (!edges) throw densim::Error(densim::ErrorCode::kIo, std::string("cannot write ") + edges_path);
    densim::write_edge_list(edges, ds->graph, ds->ml.node_names);
    if (!edges.flush()) throw densim::Error(densim::ErrorCode::kIo, std::string("write failed: ") + edges_path);
    if (sim_path) {
      std::ofstream sim(sim_path);
      if (!sim) throw densim::Error(densim::ErrorCode::kIo, std::string("cannot write ") + sim_path);
      densim::write_similarity(sim, ds->sim);
      if (!sim.flush()) throw densim::Error(densim::ErrorCode::kIo, std::string("write failed: ") + sim_path);
    }
  });
}

void densim_dataset_free(densim_dataset* ds) { delete ds; }

size_t densim_dataset_node_count(const densim_dataset* ds) { return ds ? ds->graph.node_count() : 0; }
size_t densim_dataset_edge_count(const densim_dataset* ds) { return ds ? ds->graph.edge_count() : 0; }
size_t densim_dataset_layer_count(const densim_dataset* ds) { return ds ? ds->ml.layers.size() : 0; }
size_t densim_dataset_similarity_pairs(const densim_dataset* ds) { return ds ? ds->sim.pair_count() : 0; }

const char* densim_dataset_node_name(const densim_dataset* ds, uint32_t node) {
  if (!ds || node >= ds->ml.node_names.size()) return nullptr;
  return ds->ml.node_names[node].c_str();
}

densim_status densim_dataset_edge(const densim_dataset* ds, uint32_t edge, uint32_t* u, uint32_t* v) {
  if (!ds || !u || !v) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  if (edge >= ds->graph.edge_count()) return fail(DENSIM_ERR_INVALID_ARGUMENT, "edge out of range");
  *u = ds->graph.edge(edge).u;
  *v = ds->graph.edge(edge).v;
  return DENSIM_OK;
}

densim_status densim_dataset_stats(const densim_dataset* ds, densim_stats* out) {
  if (!ds || !out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    densim::DatasetStats s = densim::stats(ds->ml, ds->graph, ds->sim);
    *out = {s.num_nodes,      s.num_edges, s.num_layers,        s.avg_edges_per_layer,
            s.num_mult_edges, s.num_meta_pairs, s.density, s.avg_layer_density,
            s.similarity,     s.avg_edge_participation};
  });
}

densim_status densim_dataset_bounds(const densim_dataset* ds, densim_bounds* out) {
  if (!ds || !out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { copy_bounds(densim::lambda_bounds(ds->graph, ds->sim), out); });
}

densim_status densim_solve_lambda(const densim_dataset* ds, double lambda, double tol,
                                  densim_solution** out, size_t* mincut_solves) {
  if (!ds || !out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    densim::FpOptions options;
    options.tol = tol;
    densim::DssInvResult r = densim::solve_dss_inv(ds->graph, ds->sim, lambda, options);
    if (mincut_solves) *mincut_solves = r.trace.mincut_solves();
    *out = wrap(std::move(r.solution));
  });
}

void densim_explore_options_init(densim_explore_options* options) {
  if (options) *options = {0.0, 0, 0, 1, 1};
}

densim_status densim_explore(const densim_dataset* ds, const densim_explore_options* options,
                             densim_catalog** out) {
  if (!ds || !out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  densim_explore_options opts;
  densim_explore_options_init(&opts);
  if (options) opts = *options;
  return guarded([&] {
    densim::ExploreOptions eo;
    if (opts.budget) eo.budget = opts.budget;
    if (opts.max_solutions) eo.max_solutions = opts.max_solutions;
    eo.jobs = opts.jobs ? opts.jobs : 1;
    eo.fp.tol = opts.tol;
    eo.fp.reuse_flow = opts.reuse_flow != 0;
    *out = new densim_catalog{densim::explore(ds->graph, ds->sim, eo)};
  });
}

void densim_catalog_free(densim_catalog* cat) { delete cat; }
size_t densim_catalog_size(const densim_catalog* cat) { return cat ? cat->catalog.solutions.size() : 0; }
int densim_catalog_truncated(const densim_catalog* cat) { return cat && cat->catalog.truncated; }

void densim_catalog_counters(const densim_catalog* cat, size_t* tested_lambdas, size_t* mincut_solves) {
  if (!cat) return;
  if (tested_lambdas) *tested_lambdas = cat->catalog.tested_lambdas();
  if (mincut_solves) *mincut_solves = cat->catalog.mincut_solves();
}

densim_status densim_catalog_bounds(const densim_catalog* cat, densim_bounds* out) {
  if (!cat || !out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  copy_bounds(cat->catalog.bounds, out);
  return DENSIM_OK;
}

densim_status densim_catalog_at(const densim_catalog* cat, size_t i, densim_solution** out) {
  if (!cat || !out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  if (i >= cat->catalog.solutions.size()) return fail(DENSIM_ERR_INVALID_ARGUMENT, "index out of range");
  return guarded([&] { *out = wrap(cat->catalog.solutions[i]); });
}

densim_status densim_catalog_solve_mu(const densim_catalog* cat, double mu, densim_solution** out) {
  if (!cat || !out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = wrap(densim::solve_dss(cat->catalog, mu)); });
}

densim_status densim_baseline(const densim_dataset* ds, densim_baseline_mode mode, double gamma,
                              densim_solution** out) {
  if (!ds || !out) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  if (mode != DENSIM_BASELINE_DEN && mode != DENSIM_BASELINE_SIM) {
    return fail(DENSIM_ERR_INVALID_ARGUMENT, "unknown baseline mode");
  }
  return guarded([&] {
    densim::EdgeSet x = mode == DENSIM_BASELINE_DEN ? densim::bl_den(ds->ml, ds->graph, gamma)
                                                    : densim::bl_sim(ds->graph, ds->sim, gamma);
    *out = wrap(densim::make_solution(ds->graph, ds->sim, std::move(x), 0.0));
  });
}

void densim_solution_info_get(const densim_solution* sol, densim_solution_info* out) {
  if (!sol || !out) return;
  const densim::Solution& s = sol->solution;
  *out = {s.lambda,          s.similarity,           s.density.numerator, s.density.denominator,
          s.objective_inv,   s.edge_set.size(),      s.edge_set.node_cover().size()};
}

uint32_t densim_solution_edge(const densim_solution* sol, size_t i) {
  if (!sol || i >= sol->solution.edge_set.size()) return UINT32_MAX;
  return sol->solution.edge_set.members()[i];
}

void densim_solution_free(densim_solution* sol) { delete sol; }

densim_status densim_dump_flow(const densim_dataset* ds, double lambda, double c, const char* path) {
  if (!ds || !path) return fail(DENSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    densim::QInstance q{&ds->sim, &ds->graph, lambda, c};
    densim::QFlowGraph g = densim::build_flow_graph(q);
    std::ofstream out(path);
    if (!out) throw densim::Error(densim::ErrorCode::kIo, std::string("cannot write ") + path);
    g.network.write_dimacs(out);
    if (!out.flush()) throw densim::Error(densim::ErrorCode::kIo, std::string("write failed: ") + path);
  });
}

}  // extern "C"

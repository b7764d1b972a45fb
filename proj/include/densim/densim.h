#ifndef DENSIM_DENSIM_H
#define DENSIM_DENSIM_H

/* C interface to the densim library. Every handle is opaque and owned by the
 * caller once returned; free it with the matching *_free function. Functions
 * that can fail return a status and leave a message for densim_last_error(). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DENSIM_API __declspec(dllexport)
#else
#define DENSIM_API __attribute__((visibility("default")))
#endif

typedef enum densim_status {
  DENSIM_OK = 0,
  DENSIM_ERR_INVALID_ARGUMENT = 1,
  DENSIM_ERR_IO = 2,
  DENSIM_ERR_DEGENERATE = 3,
  DENSIM_ERR_USAGE = 4,
  DENSIM_ERR_PARSE = 5,
  DENSIM_ERR_MONOTONICITY = 6,
  DENSIM_ERR_TRUNCATED = 7,
  DENSIM_ERR_INFEASIBLE = 8,
  DENSIM_ERR_INTERNAL = 9
} densim_status;

typedef struct densim_dataset densim_dataset;
typedef struct densim_catalog densim_catalog;
typedef struct densim_solution densim_solution;

/* Message of the last failure on the calling thread; "" if none. */
DENSIM_API const char* densim_last_error(void);
DENSIM_API const char* densim_status_name(densim_status status);

/* ---- datasets ---- */

/* Loads a multiplex edge list. With sim_path the similarity comes from an
 * `e_i e_j s` sidecar instead of the layer labels. */
DENSIM_API densim_status densim_dataset_load(const char* edges_path, const char* sim_path,
                                             densim_dataset** out);
DENSIM_API densim_status densim_dataset_parse(const char* edges_text, densim_dataset** out);
/* Random G(n, m) instance; every edge pair is similar with probability p. */
DENSIM_API densim_status densim_dataset_generate(size_t nodes, size_t edges, double p_sim,
                                                 uint64_t seed, densim_dataset** out);
/* Writes the edge list and the similarity sidecar. */
DENSIM_API densim_status densim_dataset_write(const densim_dataset* ds, const char* edges_path,
                                              const char* sim_path);
DENSIM_API void densim_dataset_free(densim_dataset* ds);

DENSIM_API size_t densim_dataset_node_count(const densim_dataset* ds);
DENSIM_API size_t densim_dataset_edge_count(const densim_dataset* ds);
DENSIM_API size_t densim_dataset_layer_count(const densim_dataset* ds);
DENSIM_API size_t densim_dataset_similarity_pairs(const densim_dataset* ds);
/* NULL when out of range. */
DENSIM_API const char* densim_dataset_node_name(const densim_dataset* ds, uint32_t node);
DENSIM_API densim_status densim_dataset_edge(const densim_dataset* ds, uint32_t edge, uint32_t* u,
                                             uint32_t* v);

typedef struct densim_stats {
  size_t num_nodes;
  size_t num_edges;
  size_t num_layers;
  double avg_edges_per_layer;
  size_t num_mult_edges;
  size_t num_meta_pairs;
  double density;
  double avg_layer_density;
  double similarity;
  double avg_edge_participation;
} densim_stats;

DENSIM_API densim_status densim_dataset_stats(const densim_dataset* ds, densim_stats* out);

typedef struct densim_bounds {
  double lambda_min;
  double lambda_max;
  double delta_lambda;
  double s_min;
  double s_max;
} densim_bounds;

DENSIM_API densim_status densim_dataset_bounds(const densim_dataset* ds, densim_bounds* out);

/* ---- solving ---- */

/* tol <= 0 selects the default tolerance. mincut_solves may be NULL. */
DENSIM_API densim_status densim_solve_lambda(const densim_dataset* ds, double lambda, double tol,
                                             densim_solution** out, size_t* mincut_solves);

typedef struct densim_explore_options {
  double tol;           /* <= 0: default */
  size_t budget;        /* 0: unlimited */
  size_t max_solutions; /* 0: unlimited */
  unsigned jobs;        /* 0 or 1: sequential */
  int reuse_flow;       /* nonzero: reuse flow between min-cut solves */
} densim_explore_options;

DENSIM_API void densim_explore_options_init(densim_explore_options* options);
/* options may be NULL. */
DENSIM_API densim_status densim_explore(const densim_dataset* ds,
                                        const densim_explore_options* options,
                                        densim_catalog** out);
DENSIM_API void densim_catalog_free(densim_catalog* cat);
DENSIM_API size_t densim_catalog_size(const densim_catalog* cat);
DENSIM_API int densim_catalog_truncated(const densim_catalog* cat);
DENSIM_API void densim_catalog_counters(const densim_catalog* cat, size_t* tested_lambdas,
                                        size_t* mincut_solves);
DENSIM_API densim_status densim_catalog_bounds(const densim_catalog* cat, densim_bounds* out);
/* Copies entry i (sorted by lambda). */
DENSIM_API densim_status densim_catalog_at(const densim_catalog* cat, size_t i,
                                           densim_solution** out);
/* Best entry for S + mu * D. Fails with DENSIM_ERR_TRUNCATED on a partial catalog. */
DENSIM_API densim_status densim_catalog_solve_mu(const densim_catalog* cat, double mu,
                                                 densim_solution** out);

typedef enum densim_baseline_mode { DENSIM_BASELINE_DEN = 0, DENSIM_BASELINE_SIM = 1 } densim_baseline_mode;

/* Baseline edge set; the solution's lambda is 0. */
DENSIM_API densim_status densim_baseline(const densim_dataset* ds, densim_baseline_mode mode,
                                         double gamma, densim_solution** out);

/* ---- solutions ---- */

typedef struct densim_solution_info {
  double lambda;
  double similarity;
  uint64_t density_num;
  uint64_t density_den;
  double objective; /* S - lambda / D */
  size_t num_edges;
  size_t num_nodes;
} densim_solution_info;

DENSIM_API void densim_solution_info_get(const densim_solution* sol, densim_solution_info* out);
/* Flattened edge id of member i (ascending); UINT32_MAX when out of range. */
DENSIM_API uint32_t densim_solution_edge(const densim_solution* sol, size_t i);
DENSIM_API void densim_solution_free(densim_solution* sol);

/* Writes the flow network of Q(. | c) at this lambda in DIMACS max-flow format. */
DENSIM_API densim_status densim_dump_flow(const densim_dataset* ds, double lambda, double c,
                                          const char* path);

#ifdef __cplusplus
}
#endif

#endif

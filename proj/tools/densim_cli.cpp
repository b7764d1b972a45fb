// densim: command-line front end over the C API.
//
//   densim stats    <edges> [--sim FILE] [--format table|json]
//   densim explore  <edges> [--sim FILE] [--tol X] [--budget N] [--max-solutions N] [--jobs N]
//                   [--out json|csv] [--output FILE]
//   densim solve    <edges> [--sim FILE] (--lambda X | --mu X) [--dump-flow FILE]
//   densim baseline <edges> [--sim FILE] --mode den|sim [--gamma-grid A:B:STEP] [--force]
//   densim gen      --nodes N --edges M --psim P --seed K --out PATH
//
// Exit codes: 0 ok, 1 internal, 2 unreadable or malformed input, 3 degenerate
// input, 4 usage.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "densim/densim.h"

using nlohmann::json;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitUsage = 4;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(densim_status s) {
  switch (s) {
    case DENSIM_OK: return 0;
    case DENSIM_ERR_IO:
    case DENSIM_ERR_PARSE: return kExitInput;
    case DENSIM_ERR_DEGENERATE:
    case DENSIM_ERR_TRUNCATED: return kExitDegenerate;
    case DENSIM_ERR_USAGE:
    case DENSIM_ERR_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitInternal;
  }
}

void check(densim_status s) {
  if (s != DENSIM_OK) throw Failure{exit_code_for(s), densim_last_error()};
}

// 12 significant digits everywhere. Reparsing the rounded text gives the
// double whose shortest form nlohmann prints.
std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}
double round12(double x) { return std::strtod(fmt12(x).c_str(), nullptr); }

template <class T, void (*Free)(T*)>
struct Owned {
  T* ptr = nullptr;
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};
using Dataset = Owned<densim_dataset, densim_dataset_free>;
using Catalog = Owned<densim_catalog, densim_catalog_free>;
using Solution = Owned<densim_solution, densim_solution_free>;

struct InputArgs {
  std::string edges;
  std::string sim;
};

void add_input(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("edges", in.edges, "Multiplex edge list: layer u v per line")->required();
  cmd->add_option("--sim", in.sim, "Similarity sidecar (e_i e_j s) replacing the layer Jaccard");
}

void load(const InputArgs& in, Dataset& ds) {
  spdlog::info("loading {}", in.edges);
  check(densim_dataset_load(in.edges.c_str(), in.sim.empty() ? nullptr : in.sim.c_str(), ds.out()));
  spdlog::info("{} nodes, {} edges, {} layers, {} similar pairs", densim_dataset_node_count(ds.get()),
               densim_dataset_edge_count(ds.get()), densim_dataset_layer_count(ds.get()),
               densim_dataset_similarity_pairs(ds.get()));
}

json solution_json(const densim_dataset* ds, const densim_solution* sol) {
  densim_solution_info info;
  densim_solution_info_get(sol, &info);
  json edges = json::array();
  for (size_t i = 0; i < info.num_edges; ++i) {
    uint32_t u, v;
    check(densim_dataset_edge(ds, densim_solution_edge(sol, i), &u, &v));
    edges.push_back({densim_dataset_node_name(ds, u), densim_dataset_node_name(ds, v)});
  }
  return {{"lambda", round12(info.lambda)},
          {"similarity", round12(info.similarity)},
          {"density_num", info.density_num},
          {"density_den", info.density_den},
          {"objective", round12(info.objective)},
          {"num_edges", info.num_edges},
          {"num_nodes", info.num_nodes},
          {"edges", std::move(edges)}};
}

json bounds_json(const densim_bounds& b) {
  return {{"lambda_min", round12(b.lambda_min)},
          {"lambda_max", round12(b.lambda_max)},
          {"delta_lambda", round12(b.delta_lambda)}};
}

json dataset_json(const InputArgs& in, const densim_dataset* ds, const densim_bounds& b) {
  json d = {{"file", in.edges},
            {"nodes", densim_dataset_node_count(ds)},
            {"edges", densim_dataset_edge_count(ds)},
            {"layers", densim_dataset_layer_count(ds)},
            {"s_min", round12(b.s_min)},
            {"s_max", round12(b.s_max)}};
  if (!in.sim.empty()) d["similarity_file"] = in.sim;
  return d;
}

void csv_row(std::ostream& out, double key, const densim_solution* sol) {
  densim_solution_info info;
  densim_solution_info_get(sol, &info);
  out << fmt12(key) << ',' << fmt12(info.similarity) << ',' << info.density_num << ','
      << info.density_den << ',' << info.num_edges << ',' << info.num_nodes << '\n';
}

// ---- stats ----

struct StatsArgs {
  InputArgs in;
  std::string format = "table";
};

int run_stats(const StatsArgs& a) {
  Dataset ds;
  load(a.in, ds);
  densim_stats s;
  check(densim_dataset_stats(ds.get(), &s));
  if (a.format == "json") {
    json j = {{"num_nodes", s.num_nodes},
              {"num_edges", s.num_edges},
              {"num_layers", s.num_layers},
              {"avg_edges_per_layer", round12(s.avg_edges_per_layer)},
              {"num_mult_edges", s.num_mult_edges},
              {"num_meta_pairs", s.num_meta_pairs},
              {"density", round12(s.density)},
              {"avg_layer_density", round12(s.avg_layer_density)},
              {"similarity", round12(s.similarity)},
              {"avg_edge_participation", round12(s.avg_edge_participation)}};
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  auto row = [](const char* name, const std::string& value) {
    std::printf("%-24s %s\n", name, value.c_str());
  };
  row("nodes", std::to_string(s.num_nodes));
  row("edges", std::to_string(s.num_edges));
  row("layers", std::to_string(s.num_layers));
  row("avg edges per layer", fmt12(s.avg_edges_per_layer));
  row("multi-layer edges", std::to_string(s.num_mult_edges));
  row("meta pairs", std::to_string(s.num_meta_pairs));
  row("density", fmt12(s.density));
  row("avg layer density", fmt12(s.avg_layer_density));
  row("similarity", fmt12(s.similarity));
  row("avg edge participation", fmt12(s.avg_edge_participation));
  return 0;
}

// ---- explore ----

struct ExploreArgs {
  InputArgs in;
  double tol = 0.0;
  size_t budget = 0;
  size_t max_solutions = 0;
  unsigned jobs = 1;
  std::string out = "json";
  std::string output;
};

int run_explore(const ExploreArgs& a) {
  Dataset ds;
  load(a.in, ds);
  densim_explore_options opts;
  densim_explore_options_init(&opts);
  opts.tol = a.tol;
  opts.budget = a.budget;
  opts.max_solutions = a.max_solutions;
  opts.jobs = a.jobs;

  auto start = std::chrono::steady_clock::now();
  Catalog cat;
  check(densim_explore(ds.get(), &opts, cat.out()));
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  size_t tested = 0, solves = 0;
  densim_catalog_counters(cat.get(), &tested, &solves);
  const bool truncated = densim_catalog_truncated(cat.get());
  spdlog::info("{} solutions, {} lambda values, {} min-cut solves, {:.3f}s",
               densim_catalog_size(cat.get()), tested, solves, seconds);
  if (truncated) spdlog::warn("search stopped early; the catalog is partial");

  std::ofstream file;
  if (!a.output.empty()) {
    file.open(a.output);
    if (!file) throw Failure{kExitInput, "cannot write " + a.output};
  }
  std::ostream& out = a.output.empty() ? std::cout : file;

  if (a.out == "csv") {
    out << "lambda,S,D_num,D_den,edges,nodes\n";
    for (size_t i = 0; i < densim_catalog_size(cat.get()); ++i) {
      Solution sol;
      check(densim_catalog_at(cat.get(), i, sol.out()));
      densim_solution_info info;
      densim_solution_info_get(sol.get(), &info);
      csv_row(out, info.lambda, sol.get());
    }
    if (truncated) std::cerr << "warning: truncated catalog\n";
  } else {
    densim_bounds b;
    check(densim_catalog_bounds(cat.get(), &b));
    json sols = json::array();
    for (size_t i = 0; i < densim_catalog_size(cat.get()); ++i) {
      Solution sol;
      check(densim_catalog_at(cat.get(), i, sol.out()));
      sols.push_back(solution_json(ds.get(), sol.get()));
    }
    json doc = {{"dataset", dataset_json(a.in, ds.get(), b)},
                {"bounds", bounds_json(b)},
                {"truncated", truncated},
                {"solutions", std::move(sols)},
                {"counters",
                 {{"seconds", round12(seconds)},
                  {"tested_lambdas", tested},
                  {"mincut_solves", solves},
                  {"mean_mincut_per_lambda",
                   round12(tested ? static_cast<double>(solves) / tested : 0.0)}}}};
    out << doc.dump(2) << '\n';
  }
  if (!out.flush()) throw Failure{kExitInput, "write failed"};
  return 0;
}

// ---- solve ----

struct SolveArgs {
  InputArgs in;
  std::optional<double> lambda;
  std::optional<double> mu;
  double tol = 0.0;
  unsigned jobs = 1;
  std::string dump_flow;
};

int run_solve(const SolveArgs& a) {
  Dataset ds;
  load(a.in, ds);
  Solution sol;
  json doc;
  if (a.lambda) {
    size_t solves = 0;
    check(densim_solve_lambda(ds.get(), *a.lambda, a.tol, sol.out(), &solves));
    doc["mincut_solves"] = solves;
    if (!a.dump_flow.empty()) {
      densim_solution_info info;
      densim_solution_info_get(sol.get(), &info);
      // The network of the final iteration: c is the optimal ratio.
      check(densim_dump_flow(ds.get(), *a.lambda, info.objective, a.dump_flow.c_str()));
    }
  } else {
    densim_explore_options opts;
    densim_explore_options_init(&opts);
    opts.tol = a.tol;
    opts.jobs = a.jobs;
    Catalog cat;
    check(densim_explore(ds.get(), &opts, cat.out()));
    check(densim_catalog_solve_mu(cat.get(), *a.mu, sol.out()));
    doc["mu"] = round12(*a.mu);
    doc["catalog_size"] = densim_catalog_size(cat.get());
    if (!a.dump_flow.empty()) {
      densim_solution_info info;
      densim_solution_info_get(sol.get(), &info);
      check(densim_dump_flow(ds.get(), info.lambda, info.objective, a.dump_flow.c_str()));
    }
  }
  doc["solution"] = solution_json(ds.get(), sol.get());
  std::cout << doc.dump(2) << '\n';
  return 0;
}

// ---- baseline ----

struct BaselineArgs {
  InputArgs in;
  std::string mode;
  std::string grid = "0:10:0.1";
  bool force = false;
};

std::vector<double> parse_grid(const std::string& text) {
  auto bad = [&] { return Failure{kExitUsage, "invalid --gamma-grid '" + text + "', expected start:stop:step"}; };
  std::vector<double> parts;
  size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    size_t end = i < 2 ? text.find(':', pos) : text.size();
    if (end == std::string::npos) throw bad();
    std::string field = text.substr(pos, end - pos);
    char* stop = nullptr;
    double v = std::strtod(field.c_str(), &stop);
    if (field.empty() || *stop != '\0' || !std::isfinite(v)) throw bad();
    parts.push_back(v);
    pos = end + 1;
  }
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (start < 0 || stop < start || step <= 0) throw bad();
  // Count steps in integers so 0:10:0.1 ends exactly at 10.
  const long long steps = std::llround(std::floor((stop - start) / step + 1e-9));
  std::vector<double> grid;
  for (long long k = 0; k <= steps; ++k) grid.push_back(start + static_cast<double>(k) * step);
  return grid;
}

int run_baseline(const BaselineArgs& a) {
  std::vector<double> grid = parse_grid(a.grid);
  Dataset ds;
  load(a.in, ds);
  const densim_baseline_mode mode = a.mode == "den" ? DENSIM_BASELINE_DEN : DENSIM_BASELINE_SIM;
  if (mode == DENSIM_BASELINE_SIM) {
    const double m = static_cast<double>(densim_dataset_edge_count(ds.get()));
    const double pairs = m * (m - 1) / 2;
    bool positive_gamma = grid.back() > 0.0;
    if (positive_gamma && pairs > 1e6) {
      spdlog::warn("sim baseline weighs up to {:.3g} edge pairs", pairs);
    }
    if (positive_gamma && pairs > 5e7 && !a.force) {
      throw Failure{kExitUsage, "sim baseline on this graph needs about " + fmt12(pairs) +
                                    " edge pairs; pass --force to run it anyway"};
    }
  }
  if (mode == DENSIM_BASELINE_DEN) {
    std::cout << "# edges: every flattened edge induced by the selected node set\n";
  }
  std::cout << "gamma,S,D_num,D_den,edges,nodes\n";
  for (double gamma : grid) {
    Solution sol;
    check(densim_baseline(ds.get(), mode, gamma, sol.out()));
    csv_row(std::cout, gamma, sol.get());
  }
  return 0;
}

// ---- gen ----

struct GenArgs {
  size_t nodes = 0;
  size_t edges = 0;
  double psim = 0.0;
  uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  Dataset ds;
  check(densim_dataset_generate(a.nodes, a.edges, a.psim, a.seed, ds.out()));
  const std::string sim = a.out + ".sim";
  check(densim_dataset_write(ds.get(), a.out.c_str(), sim.c_str()));
  spdlog::info("wrote {} and {} ({} similar pairs)", a.out, sim,
               densim_dataset_similarity_pairs(ds.get()));
  return 0;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("densim");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("DENSIM_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Dense subgraphs with similar edges in multiplex networks"};
  app.require_subcommand(1);

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Print dataset statistics");
  add_input(stats, stats_args.in);
  stats->add_option("--format", stats_args.format)->check(CLI::IsMember({"table", "json"}));

  ExploreArgs explore_args;
  auto* explore = app.add_subcommand("explore", "Find every distinct solution across lambda");
  add_input(explore, explore_args.in);
  explore->add_option("--tol", explore_args.tol, "Termination threshold on Q (default: automatic)");
  explore->add_option("--budget", explore_args.budget, "Maximum lambda values to evaluate")
      ->check(CLI::PositiveNumber);
  explore->add_option("--max-solutions", explore_args.max_solutions, "Stop after this many solutions")
      ->check(CLI::PositiveNumber);
  explore->add_option("--jobs", explore_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  explore->add_option("--out", explore_args.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
  explore->add_option("--output", explore_args.output, "Write to this file instead of stdout");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve for one lambda or one mu");
  add_input(solve, solve_args.in);
  auto* lambda_opt = solve->add_option("--lambda", solve_args.lambda, "Maximize S - lambda / D");
  auto* mu_opt = solve->add_option("--mu", solve_args.mu, "Maximize S + mu * D (explores first)");
  lambda_opt->excludes(mu_opt);
  solve->add_option("--tol", solve_args.tol);
  solve->add_option("--jobs", solve_args.jobs)->check(CLI::PositiveNumber);
  solve->add_option("--dump-flow", solve_args.dump_flow, "Write the final flow network (DIMACS)");

  BaselineArgs baseline_args;
  auto* baseline = app.add_subcommand("baseline", "Sweep a baseline over gamma");
  add_input(baseline, baseline_args.in);
  baseline->add_option("--mode", baseline_args.mode)->required()->check(CLI::IsMember({"den", "sim"}));
  baseline->add_option("--gamma-grid", baseline_args.grid, "start:stop:step")->capture_default_str();
  baseline->add_flag("--force", baseline_args.force, "Run the sim baseline on large graphs");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a random instance and its similarity sidecar");
  gen->add_option("--nodes", gen_args.nodes)->required();
  gen->add_option("--edges", gen_args.edges)->required();
  gen->add_option("--psim", gen_args.psim)->required()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_args.seed)->required();
  gen->add_option("--out", gen_args.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*stats) return run_stats(stats_args);
    if (*explore) return run_explore(explore_args);
    if (*solve) {
      if (!solve_args.lambda && !solve_args.mu) throw Failure{kExitUsage, "solve needs --lambda or --mu"};
      return run_solve(solve_args);
    }
    if (*baseline) return run_baseline(baseline_args);
    if (*gen) return run_gen(gen_args);
  } catch (const Failure& f) {
    std::cerr << "densim: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "densim: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

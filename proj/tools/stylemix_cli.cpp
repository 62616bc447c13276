// stylemix: command-line front end for distances, variety queries, solving,
// LP export and the validation experiments.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input or flags,
// 3 infeasible instance, 4 budget exhausted without a feasible plan.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stylemix/stylemix.hpp"

namespace {

using namespace stylemix;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBudget = 4;

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string output;
  std::string format;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::Infeasible: return kExitInfeasible;
  case ErrorCode::BudgetExceeded: return kExitBudget;
  case ErrorCode::VerificationFailed: return kExitVerification;
  default: return kExitInvalid;
  }
}

std::uint64_t default_seed() {
  if (const char *env = std::getenv("STYLEMIX_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception &) {
      std::cerr << "warning: ignoring non-numeric STYLEMIX_SEED\n";
    }
  }
  return 1;
}

/// Primary output goes to --output or stdout; the human summary goes to
/// stdout unless stdout already carries the primary output.
class Sink {
public:
  explicit Sink(const GlobalOptions &g) : path_(g.output) {}

  void write(const std::string &text) const {
    if (path_.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path_, std::ios::binary);
    if (!out)
      throw Error(ErrorCode::InvalidConfig, "cannot write " + path_);
    out << text;
  }

  std::ostream &summary() const { return path_.empty() ? std::cerr : std::cout; }

private:
  std::string path_;
};

std::string resolve_format(const GlobalOptions &g, const std::string &fallback) {
  const std::string f = g.format.empty() ? fallback : g.format;
  if (f != "json" && f != "csv")
    throw Error(ErrorCode::InvalidConfig, "--format must be json or csv");
  return f;
}

Metric metric_from(const std::string &name) {
  const auto m = parse_metric(name);
  if (!m)
    throw Error(ErrorCode::InvalidConfig, "unknown metric \"" + name + "\"");
  return *m;
}

struct DistancesCmd {
  std::string catalog;
  std::string metric = "squared_euclidean";
  bool normalize = false;
};

int run_distances(const GlobalOptions &g, const DistancesCmd &c) {
  auto catalog = load_catalog_file(c.catalog);
  if (c.normalize)
    catalog = catalog.normalized();
  const auto d = distance_matrix(catalog, metric_from(c.metric));
  const Sink sink(g);
  sink.write(resolve_format(g, "json") == "csv" ? to_csv(d) : to_json(d).dump() + "\n");

  double lo = 0.0, hi = 0.0, sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const double v = d(i, j);
      lo = pairs == 0 ? v : std::min(lo, v);
      hi = pairs == 0 ? v : std::max(hi, v);
      sum += v;
      ++pairs;
    }
  sink.summary() << "n=" << d.size() << " dimension=" << catalog.dimension()
                 << " metric=" << to_string(metric_from(c.metric));
  if (pairs > 0)
    sink.summary() << " min=" << lo << " max=" << hi
                   << " mean=" << sum / static_cast<double>(pairs);
  sink.summary() << "\n";
  return kExitOk;
}

struct VarietyCmd {
  std::string catalog;
  std::string metric = "squared_euclidean";
  std::vector<std::string> styles;
  std::string measure = "all";
};

int run_variety(const GlobalOptions &g, const VarietyCmd &c) {
  const auto catalog = load_catalog_file(c.catalog);
  const auto d = distance_matrix(catalog, metric_from(c.metric));
  std::vector<std::size_t> idx;
  for (const auto &id : c.styles) {
    std::size_t found = catalog.size();
    for (std::size_t i = 0; i < catalog.size(); ++i)
      if (catalog[i].id == id)
        found = i;
    if (found == catalog.size())
      throw Error(ErrorCode::IndexOutOfRange, "style \"" + id + "\" not in catalog");
    idx.push_back(found);
  }
  const StyleSubset subset(idx);
  std::vector<VarietyMeasure> measures;
  if (c.measure == "all") {
    measures.assign(kAllMeasures.begin(), kAllMeasures.end());
  } else {
    const auto m = parse_measure(c.measure);
    if (!m)
      throw Error(ErrorCode::InvalidConfig, "unknown measure \"" + c.measure + "\"");
    measures.push_back(*m);
  }
  const bool csv = resolve_format(g, "json") == "csv";
  std::string out = csv ? "measure,variety\n" : "";
  nlohmann::json doc = nlohmann::json::object();
  for (auto m : measures) {
    const double v = variety(m, subset, d);
    if (csv)
      out += std::string(to_string(m)) + "," + detail::format_double(v) + "\n";
    else
      doc[std::string(to_string(m))] = v;
  }
  Sink(g).write(csv ? out : doc.dump() + "\n");
  return kExitOk;
}

struct SolveCmd {
  std::string instance;
  std::string mode = "auto";
  std::size_t max_iters = HeuristicConfig{}.max_iters;
  std::size_t restarts = HeuristicConfig{}.restarts;
  double time_budget = ExactLimits{}.time_budget;
  std::size_t max_patterns = ExactLimits{}.max_patterns;
  std::size_t exact_threshold = 24;
  bool record_time = false;
  bool no_warm_start = false;
};

int run_solve(const GlobalOptions &g, const SolveCmd &c) {
  const auto inst = load_instance_file(c.instance);
  require_valid(inst);
  const std::size_t cells = inst.num_articles() * inst.num_stores();
  bool exact = c.mode == "exact";
  if (c.mode == "auto")
    exact = cells <= c.exact_threshold && inst.num_articles() <= kMaxExactArticles;
  else if (c.mode != "heuristic" && c.mode != "exact")
    throw Error(ErrorCode::InvalidConfig, "--mode must be exact, heuristic or auto");

  SolveReport report;
  try {
    if (exact) {
      report = solve_exact(inst, {c.max_patterns, c.time_budget, !c.no_warm_start});
    } else {
      HeuristicConfig cfg;
      cfg.seed = g.seed;
      cfg.max_iters = c.max_iters;
      cfg.restarts = c.restarts;
      report = solve_heuristic(inst, cfg);
    }
  } catch (const Error &e) {
    if (e.code() == ErrorCode::Infeasible) {
      std::cerr << "infeasible: " << e.what() << "\n";
      if (const auto why = diagnose_infeasibility(inst))
        std::cerr << "certificate: " << *why << "\n";
      else
        std::cerr << "certificate: no assignment pattern satisfying the two-style "
                     "minimum admits feasible quantities\n";
    }
    throw;
  }
  const Sink sink(g);
  sink.write(to_json(report, c.record_time).dump(2) + "\n");
  sink.summary() << "mode=" << (exact ? "exact" : "heuristic")
                 << " status=" << to_string(report.status)
                 << " objective=" << detail::format_double(report.plan.objective)
                 << " iterations=" << report.iterations << " wall_time_s=" << report.wall_time
                 << "\n";
  return kExitOk;
}

int run_export_lp(const GlobalOptions &g, const std::string &instance_path) {
  const auto inst = load_instance_file(instance_path);
  require_valid(inst);
  const auto model = build_lp_model(inst);
  const Sink sink(g);
  sink.write(render_lp(model));
  sink.summary() << "rows=" << model.rows.size() << " variables=" << model.variables.size()
                 << "\n";
  return kExitOk;
}

struct ExperimentCmd {
  std::string kind;
  std::string sizes = "2..20";
  std::size_t reps = 1000;
  std::size_t population = 35;
  std::size_t dim = 16;
  std::string catalog;
  std::string metric = "squared_euclidean";
  std::string instance;
};

std::pair<std::size_t, std::size_t> parse_sizes(const std::string &text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto k = std::stoul(text);
      return {k, k};
    }
    return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
  } catch (const std::exception &) {
    throw Error(ErrorCode::InvalidConfig, "--sizes must look like 2..20");
  }
}

int run_experiment(const GlobalOptions &g, const ExperimentCmd &c) {
  const Sink sink(g);
  if (c.kind == "counterexamples") {
    CounterexampleReport report;
    try {
      report = verify_counterexamples();
    } catch (const Error &e) {
      std::cerr << e.what() << "\n";
      return kExitVerification;
    }
    sink.write(resolve_format(g, "json") == "csv" ? to_csv(report)
                                                  : to_json(report).dump(2) + "\n");
    for (const auto &cs : report.cases)
      sink.summary() << to_string(cs.measure) << " on " << cs.configuration << ": "
                     << detail::format_double(cs.result.before) << " -> "
                     << detail::format_double(cs.result.after) << " "
                     << (cs.result.held ? "held" : "violated") << "\n";
    return kExitOk;
  }
  if (c.kind == "linearity") {
    LinearityConfig cfg;
    const auto [lo, hi] = parse_sizes(c.sizes);
    cfg.min_size = lo;
    cfg.max_size = hi;
    cfg.repetitions = c.reps;
    cfg.seed = g.seed;
    const Metric metric = metric_from(c.metric);
    if (!c.catalog.empty()) {
      cfg.population = distance_matrix(load_catalog_file(c.catalog), metric);
    } else {
      if (c.dim < 1)
        throw Error(ErrorCode::InvalidConfig, "--dim must be >= 1");
      cfg.population = distance_matrix(synthetic_catalog(c.population, c.dim, g.seed), metric);
    }
    const auto report = run_linearity(cfg);
    sink.write(resolve_format(g, "csv") == "csv" ? to_csv(report)
                                                 : to_json(report).dump(2) + "\n");
    for (const auto &curve : report.curves)
      sink.summary() << to_string(curve.measure) << ": linear_r2=" << curve.linear.r2
                     << " quadratic_r2=" << curve.quadratic_r2
                     << " rank_corr=" << curve.rank_correlation << "\n";
    return kExitOk;
  }
  if (c.kind == "baseline") {
    const auto inst = c.instance.empty() ? paired_instance(g.seed) : load_instance_file(c.instance);
    require_valid(inst);
    ComparisonOptions opts;
    const auto result = compare_against_baseline(inst, g.seed, opts);
    sink.write(to_json(result).dump(2) + "\n");
    sink.summary() << "baseline=" << detail::format_double(result.baseline_objective)
                   << " optimized=" << detail::format_double(result.optimized_objective)
                   << " improvement_pct=" << result.improvement_pct << "\n";
    return kExitOk;
  }
  throw Error(ErrorCode::InvalidConfig,
              "--kind must be linearity, counterexamples or baseline");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Visual-variety style distribution: distances, variety, solving, LP export "
               "and experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  global.seed = default_seed();
  app.add_option("--seed", global.seed, "RNG seed (default $STYLEMIX_SEED or 1)");
  app.add_option("--output", global.output, "Primary output file (default stdout)");
  app.add_option("--format", global.format, "Output format: json or csv");

  DistancesCmd dist;
  auto *distances = app.add_subcommand("distances", "Pairwise distance matrix of a catalog");
  distances->add_option("--catalog", dist.catalog, "Catalog file (.csv or .json)")->required();
  distances->add_option("--metric", dist.metric, "squared_euclidean (default) or euclidean");
  distances->add_flag("--normalize", dist.normalize, "Scale vectors to unit L2 norm first");

  VarietyCmd var;
  auto *variety_cmd = app.add_subcommand("variety", "Variety of a set of catalog styles");
  variety_cmd->add_option("--catalog", var.catalog, "Catalog file")->required();
  variety_cmd->add_option("--styles", var.styles, "Style ids")->required()->delimiter(',');
  variety_cmd->add_option("--measure", var.measure, "Measure name or 'all'");
  variety_cmd->add_option("--metric", var.metric, "squared_euclidean or euclidean");

  SolveCmd solve;
  auto *solve_cmd = app.add_subcommand("solve", "Solve a distribution instance");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--mode", solve.mode, "exact, heuristic or auto");
  solve_cmd->add_option("--max-iters", solve.max_iters, "Heuristic accepted-move cap");
  solve_cmd->add_option("--restarts", solve.restarts, "Heuristic perturbation rounds");
  solve_cmd->add_option("--time-budget", solve.time_budget, "Exact search budget, seconds");
  solve_cmd->add_option("--max-patterns", solve.max_patterns, "Exact search pattern cap");
  solve_cmd->add_option("--exact-threshold", solve.exact_threshold,
                        "auto uses exact when articles*stores <= this (default 24)");
  solve_cmd->add_flag("--no-warm-start", solve.no_warm_start,
                      "Exact search starts without the heuristic incumbent");
  solve_cmd->add_flag("--record-time", solve.record_time,
                      "Include wall_time_s in the report (output no longer byte-stable)");

  std::string lp_instance;
  auto *lp_cmd = app.add_subcommand("export-lp", "Write the MILP in LP format");
  lp_cmd->add_option("--instance", lp_instance, "Instance JSON")->required();

  ExperimentCmd exp;
  auto *exp_cmd = app.add_subcommand("experiment", "Run a validation experiment");
  exp_cmd->add_option("--kind", exp.kind, "linearity, counterexamples or baseline")->required();
  exp_cmd->add_option("--sizes", exp.sizes, "Subset sizes, e.g. 2..20");
  exp_cmd->add_option("--reps", exp.reps, "Repetitions per size");
  exp_cmd->add_option("--population", exp.population, "Synthetic population size");
  exp_cmd->add_option("--dim", exp.dim, "Synthetic embedding dimension");
  exp_cmd->add_option("--catalog", exp.catalog, "Use this catalog as the population");
  exp_cmd->add_option("--metric", exp.metric, "squared_euclidean or euclidean");
  exp_cmd->add_option("--instance", exp.instance, "Instance for --kind baseline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (distances->parsed())
      return run_distances(global, dist);
    if (variety_cmd->parsed())
      return run_variety(global, var);
    if (solve_cmd->parsed())
      return run_solve(global, solve);
    if (lp_cmd->parsed())
      return run_export_lp(global, lp_instance);
    if (exp_cmd->parsed())
      return run_experiment(global, exp);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

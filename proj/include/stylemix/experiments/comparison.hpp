#ifndef STYLEMIX_EXPERIMENTS_COMPARISON_HPP
#define STYLEMIX_EXPERIMENTS_COMPARISON_HPP

#include <cstddef>
#include <cstdint>

#include <json.hpp>

#include "stylemix/instance.hpp"
#include "stylemix/plan.hpp"
#include "stylemix/solver/baseline.hpp"
#include "stylemix/solver/exact.hpp"
#include "stylemix/solver/heuristic.hpp"

namespace stylemix {

struct ComparisonOptions {
  std::size_t exact_threshold = 24; ///< exact solver when articles * stores <= this
  ExactLimits exact_limits;
  HeuristicConfig heuristic;
};

struct ComparisonResult {
  double baseline_objective = 0.0;
  double optimized_objective = 0.0;
  double improvement_pct = 0.0;
  DistributionPlan baseline_plan;
  DistributionPlan optimized_plan;
  SolveStatus optimized_status = SolveStatus::FeasibleHeuristic;
};

/// Variety-blind allocation against the optimizer: 100 (opt - base) / base,
/// reported as 0 when both objectives are 0.
inline ComparisonResult compare_against_baseline(const DistributionInstance &inst,
                                                 std::uint64_t seed,
                                                 ComparisonOptions options = {}) {
  ComparisonResult out;
  out.baseline_plan = variety_blind_plan(inst);
  out.baseline_objective = out.baseline_plan.objective;

  SolveReport report;
  if (inst.num_articles() * inst.num_stores() <= options.exact_threshold &&
      inst.num_articles() <= kMaxExactArticles) {
    report = solve_exact(inst, options.exact_limits);
  } else {
    options.heuristic.seed = seed;
    report = solve_heuristic(inst, options.heuristic);
  }
  out.optimized_plan = report.plan;
  out.optimized_status = report.status;
  out.optimized_objective = report.plan.objective;
  const double diff = out.optimized_objective - out.baseline_objective;
  if (out.baseline_objective != 0.0)
    out.improvement_pct = 100.0 * diff / out.baseline_objective;
  else
    out.improvement_pct = diff == 0.0 ? 0.0 : 100.0;
  if (diff < 1e-9 && diff > -1e-9)
    out.improvement_pct = 0.0;
  return out;
}

inline nlohmann::json plan_json(const DistributionPlan &plan) {
  auto y = nlohmann::json::array();
  for (const auto &row : plan.y.grid().nested()) {
    auto r = nlohmann::json::array();
    for (auto v : row)
      r.push_back(static_cast<int>(v));
    y.push_back(std::move(r));
  }
  return {{"objective", plan.objective},
          {"per_store_variety", plan.per_store_variety},
          {"x", plan.x.nested()},
          {"y", std::move(y)}};
}

inline nlohmann::json to_json(const ComparisonResult &r) {
  return {{"baseline_objective", r.baseline_objective},
          {"optimized_objective", r.optimized_objective},
          {"improvement_pct", r.improvement_pct},
          {"optimized_status", std::string(to_string(r.optimized_status))},
          {"baseline_plan", plan_json(r.baseline_plan)},
          {"optimized_plan", plan_json(r.optimized_plan)}};
}

} // namespace stylemix

#endif // STYLEMIX_EXPERIMENTS_COMPARISON_HPP

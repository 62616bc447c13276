#ifndef STYLEMIX_SOLVER_EVALUATE_HPP
#define STYLEMIX_SOLVER_EVALUATE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "stylemix/instance.hpp"
#include "stylemix/plan.hpp"
#include "stylemix/variety.hpp"

namespace stylemix {

/// MaxMean of every store's assigned set; stores with fewer than two styles
/// score 0.
inline std::vector<double> store_varieties(const DistributionInstance &inst,
                                           const AssignmentPattern &pattern) {
  std::vector<double> out(pattern.num_stores(), 0.0);
  for (std::size_t s = 0; s < pattern.num_stores(); ++s) {
    const auto members = pattern.members(s);
    if (!members.empty())
      out[s] = variety(VarietyMeasure::MaxMean, StyleSubset(members),
                       inst.distances);
  }
  return out;
}

inline double sum_of(const std::vector<double> &values) {
  double total = 0.0;
  for (double v : values)
    total += v;
  return total;
}

/// Every constraint of the distribution model the plan breaks, one line each.
inline std::vector<std::string> plan_violations(const DistributionInstance &inst,
                                                const DistributionPlan &plan) {
  std::vector<std::string> out;
  const std::size_t n = inst.num_articles();
  const std::size_t m = inst.num_stores();
  if (plan.x.rows() != n || plan.x.cols() != m || plan.y.num_articles() != n ||
      plan.y.num_stores() != m) {
    out.push_back("plan shape does not match " + std::to_string(n) + " articles x " +
                  std::to_string(m) + " stores");
    return out;
  }
  auto cell = [&](std::size_t i, std::size_t s) {
    return "(" + inst.articles[i].id + "," + inst.stores[s].id + ")";
  };
  for (std::size_t i = 0; i < n; ++i) {
    Quantity shipped = 0;
    for (std::size_t s = 0; s < m; ++s) {
      const Quantity x = plan.x(i, s);
      const bool y = plan.y.assigned(i, s);
      shipped += x;
      if (x < 0)
        out.push_back("negative quantity at " + cell(i, s));
      if (x >= 1 && !y)
        out.push_back("quantity shipped without assignment at " + cell(i, s));
      if (y && x < cell_minimum(inst, i))
        out.push_back("minimum quantity " + std::to_string(cell_minimum(inst, i)) +
                      " not met at " + cell(i, s));
      if (y && x > cell_capacity(inst, i, s))
        out.push_back("big-M cap " + std::to_string(cell_capacity(inst, i, s)) +
                      " exceeded at " + cell(i, s));
    }
    if (shipped > inst.articles[i].planned_total)
      out.push_back("article " + inst.articles[i].id + " ships " +
                    std::to_string(shipped) + " > planned " +
                    std::to_string(inst.articles[i].planned_total));
  }
  for (std::size_t s = 0; s < m; ++s) {
    Quantity total = 0;
    for (std::size_t i = 0; i < n; ++i)
      total += plan.x(i, s);
    const Quantity lo = store_lower(inst, s);
    const Quantity hi = store_upper(inst, s);
    if (total < lo || total > hi)
      out.push_back("store " + inst.stores[s].id + " receives " +
                    std::to_string(total) + " outside [" + std::to_string(lo) +
                    ", " + std::to_string(hi) + "]");
    if (plan.y.styles_at(s) < 2)
      out.push_back("store " + inst.stores[s].id + " has fewer than two styles");
  }
  return out;
}

/// Checks every constraint, then fills per_store_variety and objective and
/// returns the objective. Throws InfeasiblePlan listing the violations.
inline double evaluate_plan(const DistributionInstance &inst,
                            DistributionPlan &plan) {
  const auto violations = plan_violations(inst, plan);
  if (!violations.empty()) {
    std::string msg;
    for (const auto &v : violations)
      msg += (msg.empty() ? "" : "; ") + v;
    throw Error(ErrorCode::InfeasiblePlan, msg);
  }
  plan.per_store_variety = store_varieties(inst, plan.y);
  plan.objective = sum_of(plan.per_store_variety);
  return plan.objective;
}

inline DistributionPlan make_plan(const DistributionInstance &inst,
                                  AssignmentPattern y, Grid<Quantity> x) {
  DistributionPlan plan{std::move(x), std::move(y), {}, 0.0};
  evaluate_plan(inst, plan);
  return plan;
}

} // namespace stylemix

#endif // STYLEMIX_SOLVER_EVALUATE_HPP

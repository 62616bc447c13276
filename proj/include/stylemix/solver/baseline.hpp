#ifndef STYLEMIX_SOLVER_BASELINE_HPP
#define STYLEMIX_SOLVER_BASELINE_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "stylemix/instance.hpp"
#include "stylemix/plan.hpp"
#include "stylemix/solver/evaluate.hpp"
#include "stylemix/solver/quantity.hpp"

namespace stylemix {

/// Store indices by descending desired quantity, ties by index.
inline std::vector<std::size_t> stores_by_demand(const DistributionInstance &inst) {
  std::vector<std::size_t> order(inst.num_stores());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.stores[a].desired_qty > inst.stores[b].desired_qty;
  });
  return order;
}

/**
 * Variety-blind allocation: stores in descending q_s pull articles
 * round-robin in catalog order, one minimum-quantity block each, until the
 * desired quantity is reached; leftover demand is topped up over the store's
 * articles in order. When the greedy quantities break a constraint, the same
 * assignment is re-solved for quantities by max-flow.
 *
 * Throws Infeasible when the resulting assignment admits no quantities.
 */
inline DistributionPlan variety_blind_plan(const DistributionInstance &inst) {
  require_valid(inst);
  const std::size_t n = inst.num_articles();
  const std::size_t m = inst.num_stores();
  AssignmentPattern y(n, m);
  Grid<Quantity> x(n, m, 0);
  std::vector<Quantity> stock(n);
  for (std::size_t i = 0; i < n; ++i)
    stock[i] = inst.articles[i].planned_total;

  std::size_t cursor = 0;
  for (const auto s : stores_by_demand(inst)) {
    const Quantity target = inst.stores[s].desired_qty;
    const Quantity upper = store_upper(inst, s);
    Quantity total = 0;
    std::vector<std::size_t> taken;
    for (std::size_t tries = 0; tries < n; ++tries) {
      if (total >= target && taken.size() >= 2)
        break;
      const std::size_t i = (cursor + tries) % n;
      const Quantity lo = cell_minimum(inst, i);
      if (y.assigned(i, s) || stock[i] < lo || lo > cell_capacity(inst, i, s) ||
          total + lo > upper)
        continue;
      y.set(i, s, true);
      x(i, s) = lo;
      stock[i] -= lo;
      total += lo;
      taken.push_back(i);
    }
    if (!taken.empty())
      cursor = (taken.back() + 1) % std::max<std::size_t>(n, 1);
    for (const auto i : taken) {
      if (total >= target)
        break;
      const Quantity room = std::min({stock[i], cell_capacity(inst, i, s) - x(i, s),
                                      target - total});
      if (room > 0) {
        x(i, s) += room;
        stock[i] -= room;
        total += room;
      }
    }
  }

  DistributionPlan plan{x, y, {}, 0.0};
  if (!plan_violations(inst, plan).empty()) {
    if (!y.satisfies_min_styles())
      throw Error(ErrorCode::Infeasible,
                  "variety-blind allocation leaves a store with fewer than two styles");
    auto flow = quantity_feasible(inst, y);
    if (!flow.feasible)
      throw Error(ErrorCode::Infeasible,
                  "variety-blind assignment: " + flow.certificate->describe(inst));
    plan.x = std::move(flow.x);
  }
  evaluate_plan(inst, plan);
  return plan;
}

} // namespace stylemix

#endif // STYLEMIX_SOLVER_BASELINE_HPP

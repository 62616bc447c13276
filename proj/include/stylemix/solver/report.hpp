#ifndef STYLEMIX_SOLVER_REPORT_HPP
#define STYLEMIX_SOLVER_REPORT_HPP

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stylemix/plan.hpp"

namespace stylemix {

enum class SolveStatus { Optimal, FeasibleHeuristic, Infeasible };

inline std::string_view to_string(SolveStatus status) {
  switch (status) {
  case SolveStatus::Optimal: return "optimal";
  case SolveStatus::FeasibleHeuristic: return "feasible_heuristic";
  case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

struct TracePoint {
  std::size_t iteration = 0;
  double objective = 0.0;

  bool operator==(const TracePoint &) const = default;
};

struct SolveReport {
  DistributionPlan plan;
  SolveStatus status = SolveStatus::Infeasible;
  std::size_t iterations = 0;
  double wall_time = 0.0; ///< seconds
  bool budget_exceeded = false;
  std::vector<TracePoint> trace;

  double objective() const noexcept { return plan.objective; }
};

/// Everything except wall time is a pure function of the inputs, so the
/// document is byte-stable unless `include_wall_time` is set.
inline nlohmann::json to_json(const SolveReport &report,
                              bool include_wall_time = false) {
  nlohmann::json doc;
  doc["status"] = std::string(to_string(report.status));
  doc["objective"] = report.plan.objective;
  doc["per_store_variety"] = report.plan.per_store_variety;
  doc["x"] = report.plan.x.nested();
  auto y = nlohmann::json::array();
  for (const auto &row : report.plan.y.grid().nested()) {
    auto json_row = nlohmann::json::array();
    for (auto v : row)
      json_row.push_back(static_cast<int>(v));
    y.push_back(std::move(json_row));
  }
  doc["y"] = std::move(y);
  doc["iterations"] = report.iterations;
  if (include_wall_time)
    doc["wall_time_s"] = report.wall_time;
  if (report.budget_exceeded)
    doc["budget_exceeded"] = true;
  if (!report.trace.empty()) {
    auto trace = nlohmann::json::array();
    for (const auto &p : report.trace)
      trace.push_back({p.iteration, p.objective});
    doc["trace"] = std::move(trace);
  }
  return doc;
}

} // namespace stylemix

#endif // STYLEMIX_SOLVER_REPORT_HPP

#ifndef STYLEMIX_EXPERIMENTS_COUNTEREXAMPLES_HPP
#define STYLEMIX_EXPERIMENTS_COUNTEREXAMPLES_HPP

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "stylemix/distance_matrix.hpp"
#include "stylemix/variety.hpp"

namespace stylemix {

struct CounterexampleCase {
  VarietyMeasure measure{};
  std::string configuration; ///< "triangle+incenter" or "segment+midpoint"
  MonotonicityResult result;
  bool expected_held = true;
};

struct CounterexampleReport {
  std::vector<CounterexampleCase> cases;

  const CounterexampleCase &find(VarietyMeasure m, const std::string &config) const {
    for (const auto &c : cases)
      if (c.measure == m && c.configuration == config)
        return c;
    throw Error(ErrorCode::InvalidConfig, "no such counterexample case");
  }
};

/// Unit equilateral triangle P1..P3 with P4 at its incenter (Euclidean).
inline DistanceMatrix triangle_with_incenter() {
  const double h = std::sqrt(3.0) / 2.0;
  return distance_matrix(std::vector<std::vector<double>>{
                             {0.0, 0.0}, {1.0, 0.0}, {0.5, h}, {0.5, h / 3.0}},
                         Metric::Euclidean);
}

/// Segment of length 2 with P3 at its midpoint (Euclidean).
inline DistanceMatrix segment_with_midpoint() {
  return distance_matrix(std::vector<std::vector<double>>{{0.0}, {2.0}, {1.0}},
                         Metric::Euclidean);
}

/**
 * Rebuilds both monotonicity counterexamples and checks each measure on
 * them: MaxMinSum drops 2 -> sqrt(3) on the triangle, MaxSumMin drops
 * 4 -> 3 on the segment, while MaxMean and MaxSumSum never decrease.
 * Throws VerificationFailed if any verdict differs from that.
 */
inline CounterexampleReport verify_counterexamples() {
  struct Config {
    std::string name;
    DistanceMatrix d;
    StyleSubset base;
    std::size_t added;
  };
  const std::vector<Config> configs = {
      {"triangle+incenter", triangle_with_incenter(), {0, 1, 2}, 3},
      {"segment+midpoint", segment_with_midpoint(), {0, 1}, 2},
  };
  const std::vector<std::pair<VarietyMeasure, std::string>> violated = {
      {VarietyMeasure::MaxMinSum, "triangle+incenter"},
      {VarietyMeasure::MaxSumMin, "segment+midpoint"},
  };

  CounterexampleReport report;
  auto add = [&](VarietyMeasure m, const Config &c, bool expected) {
    report.cases.push_back({m, c.name, check_monotonicity(m, c.d, c.base, c.added), expected});
  };
  for (const auto &[m, name] : violated)
    for (const auto &c : configs)
      if (c.name == name)
        add(m, c, false);
  for (auto m : {VarietyMeasure::MaxMean, VarietyMeasure::MaxSumSum})
    for (const auto &c : configs)
      add(m, c, true);

  for (const auto &c : report.cases)
    if (c.result.held != c.expected_held)
      throw Error(ErrorCode::VerificationFailed,
                  std::string(to_string(c.measure)) + " on " + c.configuration +
                      (c.expected_held ? " decreased" : " did not decrease"));
  return report;
}

inline nlohmann::json to_json(const CounterexampleReport &report) {
  auto doc = nlohmann::json::array();
  for (const auto &c : report.cases)
    doc.push_back({{"measure", std::string(to_string(c.measure))},
                   {"configuration", c.configuration},
                   {"before", c.result.before},
                   {"after", c.result.after},
                   {"verdict", c.result.held ? "held" : "violated"},
                   {"expected", c.expected_held ? "held" : "violated"}});
  return doc;
}

inline std::string to_csv(const CounterexampleReport &report) {
  std::string out = "measure,configuration,before,after,verdict\n";
  for (const auto &c : report.cases)
    out += std::string(to_string(c.measure)) + "," + c.configuration + "," +
           detail::format_double(c.result.before) + "," +
           detail::format_double(c.result.after) + "," +
           (c.result.held ? "held" : "violated") + "\n";
  return out;
}

} // namespace stylemix

#endif // STYLEMIX_EXPERIMENTS_COUNTEREXAMPLES_HPP

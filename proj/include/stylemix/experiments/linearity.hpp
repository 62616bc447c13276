#ifndef STYLEMIX_EXPERIMENTS_LINEARITY_HPP
#define STYLEMIX_EXPERIMENTS_LINEARITY_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "stylemix/distance_matrix.hpp"
#include "stylemix/experiments/stats.hpp"
#include "stylemix/rng.hpp"
#include "stylemix/variety.hpp"

namespace stylemix {

struct LinearityConfig {
  DistanceMatrix population;
  std::size_t min_size = 2;
  std::size_t max_size = 20;
  std::size_t repetitions = 1000;
  std::uint64_t seed = 1;
};

struct SizeStats {
  std::size_t k = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct MeasureCurve {
  VarietyMeasure measure{};
  std::vector<SizeStats> points;
  stats::LinearFit linear;
  double quadratic_r2 = 0.0;
  double rank_correlation = 0.0; ///< Spearman of mean variety vs k
};

struct ExperimentReport {
  std::size_t population_size = 0;
  std::size_t repetitions = 0;
  std::uint64_t seed = 0;
  std::vector<MeasureCurve> curves; ///< one per measure, in kAllMeasures order

  const MeasureCurve &curve(VarietyMeasure m) const {
    for (const auto &c : curves)
      if (c.measure == m)
        return c;
    throw Error(ErrorCode::InvalidConfig, "measure not in report");
  }
};

/// Uniform k-subset of [0, n) by partial Fisher-Yates.
inline std::vector<std::size_t> sample_subset(std::size_t n, std::size_t k, Rng &rng) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t a = 0; a < k; ++a) {
    const auto b = a + static_cast<std::size_t>(rng.below(n - a));
    std::swap(pool[a], pool[b]);
  }
  pool.resize(k);
  return pool;
}

/**
 * Mean and spread of each measure over `repetitions` uniform random subsets
 * per size, with linear and quadratic fits of the mean curve. Each trial
 * draws from its own stream keyed by (seed, measure, k, trial), so results
 * do not depend on evaluation order.
 */
inline ExperimentReport run_linearity(const LinearityConfig &config) {
  const std::size_t n = config.population.size();
  if (config.min_size < 1 || config.min_size > config.max_size)
    throw Error(ErrorCode::InvalidConfig, "subset sizes must satisfy 1 <= min <= max");
  if (config.repetitions < 1)
    throw Error(ErrorCode::InvalidConfig, "repetitions must be >= 1");
  if (config.max_size > n)
    throw Error(ErrorCode::PopulationTooSmall,
                "max subset size " + std::to_string(config.max_size) +
                    " exceeds population of " + std::to_string(n));

  ExperimentReport report;
  report.population_size = n;
  report.repetitions = config.repetitions;
  report.seed = config.seed;
  for (std::size_t mi = 0; mi < kAllMeasures.size(); ++mi) {
    const auto measure = kAllMeasures[mi];
    MeasureCurve curve;
    curve.measure = measure;
    std::vector<double> ks;
    std::vector<double> means;
    std::vector<double> values(config.repetitions);
    for (std::size_t k = config.min_size; k <= config.max_size; ++k) {
      for (std::size_t t = 0; t < config.repetitions; ++t) {
        Rng rng(stream_seed({config.seed, mi, k, t}));
        values[t] = variety(measure, StyleSubset(sample_subset(n, k, rng)), config.population);
      }
      curve.points.push_back({k, stats::mean(values), stats::stddev(values)});
      ks.push_back(static_cast<double>(k));
      means.push_back(curve.points.back().mean);
    }
    curve.linear = stats::linear_fit(ks, means);
    curve.quadratic_r2 = stats::quadratic_fit(ks, means).r2;
    curve.rank_correlation = stats::spearman(ks, means);
    report.curves.push_back(std::move(curve));
  }
  return report;
}

/// measure,k,mean,std rows for plotting.
inline std::string to_csv(const ExperimentReport &report) {
  std::string out = "measure,k,mean,std\n";
  for (const auto &c : report.curves)
    for (const auto &p : c.points)
      out += std::string(to_string(c.measure)) + "," + std::to_string(p.k) + "," +
             detail::format_double(p.mean) + "," + detail::format_double(p.stddev) + "\n";
  return out;
}

inline nlohmann::json to_json(const ExperimentReport &report) {
  nlohmann::json doc;
  doc["population_size"] = report.population_size;
  doc["repetitions"] = report.repetitions;
  doc["seed"] = report.seed;
  doc["measures"] = nlohmann::json::array();
  for (const auto &c : report.curves) {
    nlohmann::json m;
    m["measure"] = std::string(to_string(c.measure));
    m["linear_fit"] = {{"slope", c.linear.slope},
                       {"intercept", c.linear.intercept},
                       {"r2", c.linear.r2}};
    m["quadratic_r2"] = c.quadratic_r2;
    m["rank_correlation"] = c.rank_correlation;
    m["points"] = nlohmann::json::array();
    for (const auto &p : c.points)
      m["points"].push_back({{"k", p.k}, {"mean", p.mean}, {"std", p.stddev}});
    doc["measures"].push_back(std::move(m));
  }
  return doc;
}

} // namespace stylemix

#endif // STYLEMIX_EXPERIMENTS_LINEARITY_HPP

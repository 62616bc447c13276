#ifndef STYLEMIX_VARIETY_HPP
#define STYLEMIX_VARIETY_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylemix/distance_matrix.hpp"
#include "stylemix/error.hpp"

namespace stylemix {

enum class VarietyMeasure { MaxSumSum, MaxMin, MaxMinSum, MaxSumMin, MaxMean };

inline constexpr std::array<VarietyMeasure, 5> kAllMeasures = {
    VarietyMeasure::MaxSumSum, VarietyMeasure::MaxMin, VarietyMeasure::MaxMinSum,
    VarietyMeasure::MaxSumMin, VarietyMeasure::MaxMean};

inline std::string_view to_string(VarietyMeasure m) {
  switch (m) {
  case VarietyMeasure::MaxSumSum: return "MaxSumSum";
  case VarietyMeasure::MaxMin: return "MaxMin";
  case VarietyMeasure::MaxMinSum: return "MaxMinSum";
  case VarietyMeasure::MaxSumMin: return "MaxSumMin";
  case VarietyMeasure::MaxMean: return "MaxMean";
  }
  return "Unknown";
}

inline std::optional<VarietyMeasure> parse_measure(std::string_view name) {
  for (auto m : kAllMeasures)
    if (to_string(m) == name)
      return m;
  return std::nullopt;
}

/// Distinct style indices. Range is checked against a matrix at use time.
class StyleSubset {
public:
  StyleSubset() = default;

  StyleSubset(std::initializer_list<std::size_t> indices)
      : StyleSubset(std::vector<std::size_t>(indices)) {}

  explicit StyleSubset(std::vector<std::size_t> indices)
      : indices_(std::move(indices)) {
    auto sorted = indices_;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw Error(ErrorCode::DuplicateIndex,
                  "style index " + std::to_string(*dup) + " repeated");
  }

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::size_t i) const {
    return std::find(indices_.begin(), indices_.end(), i) != indices_.end();
  }
  const std::vector<std::size_t> &indices() const noexcept { return indices_; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  StyleSubset with(std::size_t added) const {
    auto out = indices_;
    out.push_back(added);
    return StyleSubset(std::move(out));
  }

private:
  std::vector<std::size_t> indices_;
};

namespace detail {

inline void check_range(const StyleSubset &subset, const DistanceMatrix &d) {
  for (auto i : subset)
    if (i >= d.size())
      throw Error(ErrorCode::IndexOutOfRange,
                  "style index " + std::to_string(i) + " outside [0, " +
                      std::to_string(d.size()) + ")");
}

inline void check_index(std::size_t i, const DistanceMatrix &d) {
  if (i >= d.size())
    throw Error(ErrorCode::IndexOutOfRange,
                "style index " + std::to_string(i) + " outside [0, " +
                    std::to_string(d.size()) + ")");
}

inline double pair_sum(const std::vector<std::size_t> &idx,
                       const DistanceMatrix &d) {
  double sum = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      sum += d(idx[a], idx[b]);
  return sum;
}

} // namespace detail

/**
 * Variety of a style set under one of the five dispersion measures.
 *
 * Singletons score 0 under every measure. MaxMean divides the pair sum by the
 * set size |I|, not by the number of pairs.
 */
inline double variety(VarietyMeasure measure, const StyleSubset &subset,
                      const DistanceMatrix &d) {
  if (subset.empty())
    throw Error(ErrorCode::EmptySubset, "variety of an empty style set");
  detail::check_range(subset, d);
  const auto &idx = subset.indices();
  const std::size_t k = idx.size();
  if (k == 1)
    return 0.0;

  switch (measure) {
  case VarietyMeasure::MaxSumSum:
    return detail::pair_sum(idx, d);
  case VarietyMeasure::MaxMean:
    return detail::pair_sum(idx, d) / static_cast<double>(k);
  case VarietyMeasure::MaxMin: {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        best = std::min(best, d(idx[a], idx[b]));
    return best;
  }
  case VarietyMeasure::MaxMinSum: {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) {
      double row = 0.0;
      for (std::size_t b = 0; b < k; ++b)
        if (b != a)
          row += d(idx[a], idx[b]);
      best = std::min(best, row);
    }
    return best;
  }
  case VarietyMeasure::MaxSumMin: {
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < k; ++b)
        if (b != a)
          nearest = std::min(nearest, d(idx[a], idx[b]));
      total += nearest;
    }
    return total;
  }
  }
  return 0.0;
}

struct MonotonicityResult {
  bool held = true;
  double before = 0.0;
  double after = 0.0;
};

inline constexpr double kMonotonicityTolerance = 1e-12;

/// Compares the variety of `subset` against `subset` plus `added`.
inline MonotonicityResult check_monotonicity(VarietyMeasure measure,
                                             const DistanceMatrix &d,
                                             const StyleSubset &subset,
                                             std::size_t added) {
  detail::check_range(subset, d);
  detail::check_index(added, d);
  if (subset.contains(added))
    throw Error(ErrorCode::DuplicateIndex,
                "added style " + std::to_string(added) + " already in the set");
  if (subset.size() < 2)
    throw Error(ErrorCode::InvalidConfig,
                "monotonicity check needs at least two styles");
  MonotonicityResult r;
  r.before = variety(measure, subset, d);
  r.after = variety(measure, subset.with(added), d);
  r.held = r.after >= r.before - kMonotonicityTolerance;
  return r;
}

/// variety(subset + candidate) - variety(subset). Empty subsets score 0.
inline double marginal_gain(VarietyMeasure measure, const StyleSubset &subset,
                            std::size_t candidate, const DistanceMatrix &d) {
  detail::check_range(subset, d);
  detail::check_index(candidate, d);
  if (subset.contains(candidate))
    throw Error(ErrorCode::DuplicateIndex,
                "candidate " + std::to_string(candidate) + " already in the set");
  if (subset.empty())
    return 0.0;

  if (measure == VarietyMeasure::MaxSumSum ||
      measure == VarietyMeasure::MaxMean) {
    const double sum = detail::pair_sum(subset.indices(), d);
    double link = 0.0;
    for (auto j : subset)
      link += d(candidate, j);
    if (measure == VarietyMeasure::MaxSumSum)
      return link;
    const double k = static_cast<double>(subset.size());
    return (sum + link) / (k + 1.0) - sum / k;
  }
  return variety(measure, subset.with(candidate), d) -
         variety(measure, subset, d);
}

/**
 * Running MaxMean state for one style set: O(|set|) insertion, removal and
 * gain queries from the maintained pair-distance sum.
 */
class MaxMeanAccumulator {
public:
  explicit MaxMeanAccumulator(const DistanceMatrix &d) : d_(&d) {}

  std::size_t size() const noexcept { return members_.size(); }
  double pair_sum() const noexcept { return pair_sum_; }
  const std::vector<std::size_t> &members() const noexcept { return members_; }

  double value() const noexcept {
    return members_.size() < 2 ? 0.0
                               : pair_sum_ / static_cast<double>(members_.size());
  }

  double link(std::size_t k) const {
    double sum = 0.0;
    for (auto j : members_)
      if (j != k)
        sum += (*d_)(k, j);
    return sum;
  }

  double gain_if_added(std::size_t k) const {
    const double n = static_cast<double>(members_.size());
    if (members_.empty())
      return 0.0;
    return (pair_sum_ + link(k)) / (n + 1.0) - value();
  }

  double gain_if_removed(std::size_t k) const {
    const double n = static_cast<double>(members_.size());
    if (members_.size() <= 2)
      return -value();
    return (pair_sum_ - link(k)) / (n - 1.0) - value();
  }

  void add(std::size_t k) {
    pair_sum_ += link(k);
    members_.push_back(k);
  }

  void remove(std::size_t k) {
    const auto it = std::find(members_.begin(), members_.end(), k);
    if (it == members_.end())
      return;
    members_.erase(it);
    pair_sum_ -= link(k);
    if (members_.size() < 2)
      pair_sum_ = 0.0;
  }

private:
  const DistanceMatrix *d_;
  std::vector<std::size_t> members_;
  double pair_sum_ = 0.0;
};

} // namespace stylemix

#endif // STYLEMIX_VARIETY_HPP

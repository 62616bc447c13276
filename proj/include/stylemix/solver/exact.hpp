#ifndef STYLEMIX_SOLVER_EXACT_HPP
#define STYLEMIX_SOLVER_EXACT_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "stylemix/instance.hpp"
#include "stylemix/plan.hpp"
#include "stylemix/solver/evaluate.hpp"
#include "stylemix/solver/heuristic.hpp"
#include "stylemix/solver/quantity.hpp"
#include "stylemix/solver/report.hpp"

namespace stylemix {

struct ExactLimits {
  std::size_t max_patterns = 50'000'000; ///< complete patterns flow-checked
  double time_budget = 60.0;             ///< seconds
  bool warm_start = true;                ///< seed the incumbent with the heuristic
};

inline constexpr double kObjectiveTolerance = 1e-9;
inline constexpr std::size_t kMaxExactArticles = 24;

namespace detail {

/// Pair-distance sums of every article subset, indexed by bitmask.
inline std::vector<double> subset_pair_sums(const DistanceMatrix &d) {
  const std::size_t n = d.size();
  std::vector<double> sums(std::size_t{1} << n, 0.0);
  for (std::uint32_t mask = 1; mask < sums.size(); ++mask) {
    const unsigned low = static_cast<unsigned>(__builtin_ctz(mask));
    const std::uint32_t rest = mask & (mask - 1);
    double link = 0.0;
    for (std::uint32_t r = rest; r; r &= r - 1)
      link += d(low, static_cast<std::size_t>(__builtin_ctz(r)));
    sums[mask] = sums[rest] + link;
  }
  return sums;
}

/// Rank of a store column in lexicographic order of (y_0s, y_1s, ...).
inline std::uint32_t lex_key(std::uint32_t mask, std::size_t n) {
  std::uint32_t key = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (mask & (1u << i))
      key |= 1u << (n - 1 - i);
  return key;
}

class ExactSearch {
public:
  ExactSearch(const DistributionInstance &inst, const ExactLimits &limits,
              std::optional<DistributionPlan> warm_start = std::nullopt)
      : inst_(inst), limits_(limits), n_(inst.num_articles()),
        m_(inst.num_stores()), start_(std::chrono::steady_clock::now()),
        warm_start_(std::move(warm_start)) {}

  SolveReport run() {
    prepare();
    AssignmentPattern pattern(n_, m_);
    std::vector<std::size_t> usage(n_, 0);
    if (m_ == 0) {
      best_ = 0.0;
      best_pattern_ = pattern;
      best_x_ = Grid<Quantity>(n_, 0);
    } else {
      bool local_ok = true;
      for (const auto &c : candidates_)
        local_ok = local_ok && !c.empty();
      if (local_ok) {
        if (warm_start_)
          seed(*warm_start_);
        descend(0, 0.0, pattern, usage, slots_);
      }
    }

    SolveReport report;
    report.iterations = patterns_checked_;
    report.budget_exceeded = stopped_;
    if (!best_pattern_) {
      if (stopped_)
        throw Error(ErrorCode::BudgetExceeded,
                    "no feasible pattern found within " +
                        std::to_string(patterns_checked_) + " patterns");
      throw Error(ErrorCode::Infeasible, "no assignment pattern admits feasible quantities");
    }
    report.plan = make_plan(inst_, *best_pattern_, best_x_);
    report.status = stopped_ ? SolveStatus::FeasibleHeuristic : SolveStatus::Optimal;
    report.wall_time = elapsed();
    return report;
  }

private:
  struct Candidate {
    std::uint32_t mask;
    double value;
  };

  void prepare() {
    const auto pair_sums = subset_pair_sums(inst_.distances);
    capacity_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const Quantity lo = cell_minimum(inst_, i);
      capacity_[i] = static_cast<std::size_t>(inst_.articles[i].planned_total / lo);
    }
    candidates_.assign(m_, {});
    for (std::size_t s = 0; s < m_; ++s) {
      const Quantity lower = store_lower(inst_, s);
      const Quantity upper = store_upper(inst_, s);
      std::vector<std::pair<std::uint32_t, Candidate>> keyed;
      for (std::uint32_t mask = 0; mask < pair_sums.size(); ++mask) {
        const int k = __builtin_popcount(mask);
        if (k < 2)
          continue;
        Quantity min_total = 0;
        Quantity max_total = 0;
        bool ok = true;
        for (std::size_t i = 0; i < n_ && ok; ++i) {
          if (!(mask & (1u << i)))
            continue;
          const Quantity lo = cell_minimum(inst_, i);
          const Quantity hi =
              std::min(cell_capacity(inst_, i, s), inst_.articles[i].planned_total);
          ok = lo <= hi && capacity_[i] > 0;
          min_total += lo;
          max_total += hi;
        }
        if (!ok || min_total > upper || max_total < lower)
          continue;
        keyed.push_back({lex_key(mask, n_), {mask, pair_sums[mask] / k}});
      }
      std::sort(keyed.begin(), keyed.end(),
                [](const auto &a, const auto &b) { return a.first < b.first; });
      for (const auto &[key, c] : keyed)
        candidates_[s].push_back(c);
    }
    slots_ = 0;
    for (auto c : capacity_)
      slots_ += std::min(c, m_);
    const double none = -std::numeric_limits<double>::infinity();
    rest_.assign(m_ + 1, std::vector<double>(slots_ + 1, 0.0));
    for (std::size_t s = m_; s-- > 0;) {
      std::vector<double> by_size(n_ + 1, none);
      for (const auto &c : candidates_[s]) {
        const auto k = static_cast<std::size_t>(__builtin_popcount(c.mask));
        by_size[k] = std::max(by_size[k], c.value);
      }
      for (std::size_t r = 0; r <= slots_; ++r) {
        double top = none;
        for (std::size_t k = 2; k <= std::min(n_, r); ++k)
          if (by_size[k] > none && rest_[s + 1][r - k] > none)
            top = std::max(top, by_size[k] + rest_[s + 1][r - k]);
        rest_[s][r] = top;
      }
    }
    fit_multipliers();
  }

  /// Subgradient descent on per-article multipliers for the relaxation that
  /// drops the coupling "article i serves at most capacity_i stores".
  void fit_multipliers() {
    lambda_.assign(n_, 0.0);
    penalized_.assign(m_ + 1, 0.0);
    double scale = 0.0;
    for (const auto &list : candidates_)
      for (const auto &c : list)
        scale = std::max(scale, c.value);
    if (m_ == 0 || scale <= 0.0)
      return;
    std::vector<double> lambda(n_, 0.0);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> used(n_);
    for (int round = 0; round < 300; ++round) {
      std::fill(used.begin(), used.end(), 0);
      double total = 0.0;
      for (std::size_t i = 0; i < n_; ++i)
        total += lambda[i] * static_cast<double>(std::min(capacity_[i], m_));
      for (std::size_t s = 0; s < m_; ++s) {
        double top = -std::numeric_limits<double>::infinity();
        std::uint32_t arg = 0;
        for (const auto &c : candidates_[s]) {
          double v = c.value;
          for (std::size_t i = 0; i < n_; ++i)
            if (c.mask & (1u << i))
              v -= lambda[i];
          if (v > top) {
            top = v;
            arg = c.mask;
          }
        }
        total += top;
        for (std::size_t i = 0; i < n_; ++i)
          used[i] += (arg >> i) & 1u;
      }
      if (total < best) {
        best = total;
        lambda_ = lambda;
      }
      const double step = scale / (2.0 * static_cast<double>(n_) * (1.0 + round / 10.0));
      for (std::size_t i = 0; i < n_; ++i) {
        const double g = static_cast<double>(std::min(capacity_[i], m_)) - used[i];
        lambda[i] = std::max(0.0, lambda[i] - step * g);
      }
    }
    for (std::size_t s = m_; s-- > 0;) {
      double top = -std::numeric_limits<double>::infinity();
      for (const auto &c : candidates_[s])
        top = std::max(top, c.value - penalty(c.mask));
      penalized_[s] = penalized_[s + 1] + top;
    }
  }

  double penalty(std::uint32_t mask) const {
    double p = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      if (mask & (1u << i))
        p += lambda_[i];
    return p;
  }

  /// Lagrangian bound on stores s.. given how often each article is in use.
  double lagrange_bound(std::size_t s, const std::vector<std::size_t> &usage) const {
    double b = penalized_[s];
    for (std::size_t i = 0; i < n_; ++i)
      b += lambda_[i] *
           static_cast<double>(std::min(capacity_[i], m_) - std::min(usage[i], m_));
    return b;
  }

  /// Best value stores s.. can add with `slots` article-store slots left.
  double rest_bound(std::size_t s, std::size_t slots) const {
    return rest_[s][std::min(slots, slots_)];
  }

  /// A value that cannot improve on the incumbent. Until the search itself
  /// reaches a leaf, ties with a warm-start incumbent are still explored so
  /// the lexicographically first optimum wins.
  bool beaten(double bound) const {
    if (!best_pattern_)
      return false;
    return from_search_ ? bound <= best_ + kObjectiveTolerance
                        : bound < best_ - kObjectiveTolerance;
  }

  void seed(const DistributionPlan &plan) {
    best_ = plan.objective;
    best_pattern_ = plan.y;
    best_x_ = plan.x;
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

  bool out_of_budget() {
    if (stopped_)
      return true;
    if (patterns_checked_ >= limits_.max_patterns || elapsed() > limits_.time_budget)
      stopped_ = true;
    return stopped_;
  }

  void descend(std::size_t s, double value, AssignmentPattern &pattern,
               std::vector<std::size_t> &usage, std::size_t slots) {
    std::vector<bool> active(m_, false);
    for (std::size_t t = 0; t <= s; ++t)
      active[t] = true;
    for (const auto &c : candidates_[s]) {
      if (out_of_budget())
        return;
      const auto size = static_cast<std::size_t>(__builtin_popcount(c.mask));
      if (size > slots)
        continue;
      const double bound = value + c.value + rest_bound(s + 1, slots - size);
      if (bound == -std::numeric_limits<double>::infinity() || beaten(bound))
        continue;
      bool fits = true;
      for (std::size_t i = 0; i < n_ && fits; ++i)
        if ((c.mask & (1u << i)) && usage[i] >= capacity_[i])
          fits = false;
      if (!fits)
        continue;

      for (std::size_t i = 0; i < n_; ++i)
        if (c.mask & (1u << i)) {
          pattern.set(i, s, true);
          ++usage[i];
        }
      const bool leaf = s + 1 == m_;
      if (!leaf && beaten(value + c.value + lagrange_bound(s + 1, usage))) {
        undo(c.mask, s, pattern, usage);
        continue;
      }
      if (leaf)
        ++patterns_checked_;
      auto check = detail::check_quantities(inst_, pattern, active);
      if (check.feasible) {
        if (leaf) {
          best_ = value + c.value;
          best_pattern_ = pattern;
          best_x_ = std::move(check.x);
          from_search_ = true;
        } else {
          descend(s + 1, value + c.value, pattern, usage, slots - size);
        }
      }
      undo(c.mask, s, pattern, usage);
    }
  }

  void undo(std::uint32_t mask, std::size_t s, AssignmentPattern &pattern,
            std::vector<std::size_t> &usage) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (mask & (1u << i)) {
        pattern.set(i, s, false);
        --usage[i];
      }
  }

  const DistributionInstance &inst_;
  ExactLimits limits_;
  std::size_t n_;
  std::size_t m_;
  std::chrono::steady_clock::time_point start_;
  std::optional<DistributionPlan> warm_start_;
  bool from_search_ = false;

  std::vector<std::size_t> capacity_; ///< max stores each article can serve
  std::vector<std::vector<Candidate>> candidates_;
  std::size_t slots_ = 0;                ///< article-store slots over all stores
  std::vector<std::vector<double>> rest_; ///< rest_[s][r]: knapsack bound on stores s..
  std::vector<double> lambda_;            ///< multipliers on article capacities
  std::vector<double> penalized_;         ///< suffix sums of penalized store maxima

  double best_ = -std::numeric_limits<double>::infinity();
  std::optional<AssignmentPattern> best_pattern_;
  Grid<Quantity> best_x_;
  std::size_t patterns_checked_ = 0;
  bool stopped_ = false;
};

} // namespace detail

/**
 * Pattern-independent reason why no plan can exist, if one of the cheap
 * checks finds it: total stock below the combined lower bands, a store with
 * fewer than two articles it could ever receive, or a store whose usable
 * articles cannot reach its lower band. Empty when only search can tell.
 */
inline std::optional<std::string> diagnose_infeasibility(const DistributionInstance &inst) {
  Quantity supply = 0;
  for (const auto &a : inst.articles)
    supply += a.planned_total;
  Quantity demand = 0;
  for (std::size_t s = 0; s < inst.num_stores(); ++s)
    demand += store_lower(inst, s);
  if (supply < demand)
    return "global_supply: planned stock " + std::to_string(supply) +
           " is below the stores' combined lower bands " + std::to_string(demand);
  for (std::size_t s = 0; s < inst.num_stores(); ++s) {
    std::size_t usable = 0;
    Quantity reach = 0;
    for (std::size_t i = 0; i < inst.num_articles(); ++i) {
      const Quantity hi = std::min(cell_capacity(inst, i, s), inst.articles[i].planned_total);
      if (cell_minimum(inst, i) <= hi) {
        ++usable;
        reach += hi;
      }
    }
    if (usable < 2)
      return "store " + inst.stores[s].id + " can receive only " + std::to_string(usable) +
             " article(s); at least two styles are required";
    if (reach < store_lower(inst, s))
      return "store " + inst.stores[s].id + " can reach at most " + std::to_string(reach) +
             " units, below its lower band " + std::to_string(store_lower(inst, s));
  }
  return std::nullopt;
}

/**
 * Optimal plan by enumerating assignment patterns store by store.
 *
 * Per-store candidates are the article sets that can meet the store's band
 * on their own; a partial pattern is dropped as soon as the stores assigned
 * so far admit no feasible quantities, or the per-store value bound cannot
 * beat the incumbent. Candidates are visited in lexicographic order of y
 * (store-major), so the reported optimum is the lexicographically smallest.
 * The heuristic's plan, when enabled, only serves as the starting incumbent.
 */
inline SolveReport solve_exact(const DistributionInstance &inst,
                               const ExactLimits &limits = {}) {
  require_valid(inst);
  if (inst.num_articles() > kMaxExactArticles)
    throw Error(ErrorCode::InvalidConfig,
                "exact enumeration supports at most " +
                    std::to_string(kMaxExactArticles) + " articles");
  std::optional<DistributionPlan> warm;
  if (limits.warm_start && limits.time_budget > 0.0 && inst.num_stores() > 0) {
    HeuristicConfig cfg;
    cfg.record_trace = false;
    try {
      warm = solve_heuristic(inst, cfg).plan;
    } catch (const Error &e) {
      if (e.code() != ErrorCode::Infeasible)
        throw;
    }
  }
  return detail::ExactSearch(inst, limits, std::move(warm)).run();
}

} // namespace stylemix

#endif // STYLEMIX_SOLVER_EXACT_HPP

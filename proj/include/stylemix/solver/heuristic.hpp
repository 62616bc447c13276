#ifndef STYLEMIX_SOLVER_HEURISTIC_HPP
#define STYLEMIX_SOLVER_HEURISTIC_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "stylemix/instance.hpp"
#include "stylemix/plan.hpp"
#include "stylemix/rng.hpp"
#include "stylemix/solver/baseline.hpp"
#include "stylemix/solver/evaluate.hpp"
#include "stylemix/solver/quantity.hpp"
#include "stylemix/solver/report.hpp"

namespace stylemix {

struct Neighborhoods {
  bool swap = true;   ///< article i at store s <-> article j at store t
  bool move = true;   ///< article i from store s to store t
  bool toggle = true; ///< add or drop one article at one store
  bool replace = true; ///< article i at store s replaced by an absent j
};

struct HeuristicConfig {
  std::uint64_t seed = 1;
  std::size_t max_iters = 100'000; ///< cap on accepted moves, restarts included
  Neighborhoods neighborhoods;
  std::size_t restarts = 40;  ///< seeded perturb-and-descend rounds
  std::size_t kick_size = 3;  ///< random toggles per perturbation
  bool record_trace = true;
};

namespace detail {

/// Assignment pattern with per-store pair sums kept in step.
class PatternState {
public:
  PatternState(const DistributionInstance &inst, AssignmentPattern y)
      : inst_(&inst), y_(std::move(y)), sums_(y_.num_stores(), 0.0),
        counts_(y_.num_stores(), 0) {
    for (std::size_t s = 0; s < y_.num_stores(); ++s)
      recompute(s);
  }

  const AssignmentPattern &pattern() const noexcept { return y_; }
  std::size_t count(std::size_t s) const { return counts_[s]; }
  bool has(std::size_t i, std::size_t s) const { return y_.assigned(i, s); }

  double store_value(std::size_t s) const { return value_of(sums_[s], counts_[s]); }

  double objective() const {
    double total = 0.0;
    for (std::size_t s = 0; s < counts_.size(); ++s)
      total += store_value(s);
    return total;
  }

  /// Sum of d(i, j) over members j of store s, excluding i itself.
  double link(std::size_t i, std::size_t s) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < y_.num_articles(); ++j)
      if (j != i && y_.assigned(j, s))
        sum += inst_->distances(i, j);
    return sum;
  }

  double delta_add(std::size_t i, std::size_t s) const {
    return value_of(sums_[s] + link(i, s), counts_[s] + 1) - store_value(s);
  }

  double delta_drop(std::size_t i, std::size_t s) const {
    return value_of(sums_[s] - link(i, s), counts_[s] - 1) - store_value(s);
  }

  /// Store s loses `out` and gains `in`.
  double delta_exchange(std::size_t out, std::size_t in, std::size_t s) const {
    const double sum = sums_[s] - link(out, s) + link(in, s) - inst_->distances(in, out);
    return value_of(sum, counts_[s]) - store_value(s);
  }

  void set(std::size_t i, std::size_t s, bool on) {
    if (y_.assigned(i, s) == on)
      return;
    y_.set(i, s, on);
    recompute(s);
  }

private:
  static double value_of(double sum, std::size_t k) {
    return k < 2 ? 0.0 : sum / static_cast<double>(k);
  }

  void recompute(std::size_t s) {
    double sum = 0.0;
    std::size_t k = 0;
    const std::size_t n = y_.num_articles();
    for (std::size_t i = 0; i < n; ++i) {
      if (!y_.assigned(i, s))
        continue;
      ++k;
      for (std::size_t j = i + 1; j < n; ++j)
        if (y_.assigned(j, s))
          sum += inst_->distances(i, j);
    }
    sums_[s] = sum;
    counts_[s] = k;
  }

  const DistributionInstance *inst_;
  AssignmentPattern y_;
  std::vector<double> sums_;
  std::vector<std::size_t> counts_;
};

class LocalSearch {
public:
  LocalSearch(const DistributionInstance &inst, const HeuristicConfig &config)
      : inst_(inst), config_(config), n_(inst.num_articles()), m_(inst.num_stores()) {}

  SolveReport run() {
    const auto start = std::chrono::steady_clock::now();
    std::optional<PatternState> seed_state;

    if (auto greedy = repair(construct()))
      seed_state = std::move(*greedy);
    try {
      PatternState blind(inst_, variety_blind_plan(inst_).y);
      if (!seed_state || blind.objective() > seed_state->objective() + kTol)
        seed_state = std::move(blind);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::Infeasible)
        throw;
    }
    if (!seed_state)
      throw Error(ErrorCode::Infeasible,
                  "construction and repair found no feasible assignment pattern");

    incumbent_ = *seed_state;
    note_incumbent();
    PatternState current = *seed_state;
    descend(current);

    Rng rng(stream_seed({config_.seed, 0x6c6f63616cULL}));
    for (std::size_t round = 0; round < config_.restarts && accepted_ < config_.max_iters;
         ++round) {
      PatternState trial = incumbent_;
      kick(trial, rng);
      auto repaired = repair(std::move(trial));
      if (!repaired)
        continue;
      descend(*repaired);
    }

    SolveReport report;
    auto check = quantity_feasible(inst_, incumbent_.pattern());
    report.plan = make_plan(inst_, incumbent_.pattern(), std::move(check.x));
    report.status = SolveStatus::FeasibleHeuristic;
    report.iterations = accepted_;
    report.trace = std::move(trace_);
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

private:
  static constexpr double kTol = 1e-9;

  /// Greedy: stores by descending q_s; seed with the farthest available pair,
  /// then add the article with the largest MaxMean gain until the set can
  /// cover the store's lower band.
  PatternState construct() const {
    PatternState state(inst_, AssignmentPattern(n_, m_));
    std::vector<Quantity> stock(n_);
    for (std::size_t i = 0; i < n_; ++i)
      stock[i] = inst_.articles[i].planned_total;

    for (const auto s : stores_by_demand(inst_)) {
      const Quantity lower = store_lower(inst_, s);
      const Quantity upper = store_upper(inst_, s);
      Quantity reserved = 0;
      Quantity reachable = 0;
      auto usable = [&](std::size_t i) {
        const Quantity lo = cell_minimum(inst_, i);
        return !state.has(i, s) && stock[i] >= lo && lo <= cell_capacity(inst_, i, s) &&
               reserved + lo <= upper;
      };
      auto take = [&](std::size_t i) {
        reachable += std::min(stock[i], cell_capacity(inst_, i, s));
        const Quantity lo = cell_minimum(inst_, i);
        reserved += lo;
        stock[i] -= lo;
        state.set(i, s, true);
      };

      std::optional<std::pair<std::size_t, std::size_t>> pair;
      double best = -1.0;
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
          if (usable(i) && usable(j) &&
              reserved + cell_minimum(inst_, i) + cell_minimum(inst_, j) <= upper &&
              inst_.distances(i, j) > best) {
            best = inst_.distances(i, j);
            pair = {i, j};
          }
      if (!pair)
        continue;
      take(pair->first);
      take(pair->second);

      while (reachable < lower) {
        std::optional<std::size_t> pick;
        double gain = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_; ++i) {
          if (!usable(i))
            continue;
          const double g = state.delta_add(i, s);
          if (g > gain + kTol) {
            gain = g;
            pick = i;
          }
        }
        if (!pick)
          break;
        take(*pick);
      }
    }
    return state;
  }

  struct Feasibility {
    std::size_t short_stores = 0;
    Quantity deficit = 0;
    bool ok() const { return short_stores == 0 && deficit == 0; }
    bool better_than(const Feasibility &o) const {
      return short_stores != o.short_stores ? short_stores < o.short_stores
                                            : deficit < o.deficit;
    }
  };

  Feasibility measure(const PatternState &state) const {
    Feasibility f;
    for (std::size_t s = 0; s < m_; ++s)
      if (state.count(s) < 2)
        f.short_stores += 2 - state.count(s);
    f.deficit = detail::check_quantities(inst_, state.pattern(),
                                         std::vector<bool>(m_, true))
                    .deficit;
    return f;
  }

  bool feasible(const PatternState &state) const {
    for (std::size_t s = 0; s < m_; ++s)
      if (state.count(s) < 2)
        return false;
    return detail::check_quantities(inst_, state.pattern(), std::vector<bool>(m_, true))
        .feasible;
  }

  /// Single toggles that most reduce (styles missing, unroutable units) until
  /// the pattern is feasible; nullopt when no toggle helps.
  std::optional<PatternState> repair(PatternState state) const {
    Feasibility current = measure(state);
    const std::size_t max_steps = 2 * n_ * m_ + 2;
    for (std::size_t step = 0; step < max_steps && !current.ok(); ++step) {
      std::optional<std::pair<std::size_t, std::size_t>> pick;
      Feasibility pick_f = current;
      double pick_value = -std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < m_; ++s) {
        for (std::size_t i = 0; i < n_; ++i) {
          const bool on = state.has(i, s);
          if (on && state.count(s) <= 2)
            continue;
          state.set(i, s, !on);
          const Feasibility f = measure(state);
          const double value = state.objective();
          state.set(i, s, on);
          if (f.better_than(pick_f) ||
              (pick && !pick_f.better_than(f) && value > pick_value + kTol)) {
            pick = {i, s};
            pick_f = f;
            pick_value = value;
          }
        }
      }
      if (!pick)
        return std::nullopt;
      state.set(pick->first, pick->second, !state.has(pick->first, pick->second));
      current = pick_f;
    }
    if (!current.ok())
      return std::nullopt;
    return state;
  }

  void note_incumbent() {
    if (config_.record_trace)
      trace_.push_back({accepted_, incumbent_.objective()});
  }

  void accept(PatternState &state) {
    ++accepted_;
    if (state.objective() > incumbent_.objective() + kTol) {
      incumbent_ = state;
      note_incumbent();
    }
  }

  /// First-improvement descent; every accepted move strictly raises the
  /// objective and keeps the pattern quantity-feasible.
  void descend(PatternState &state) {
    if (state.objective() > incumbent_.objective() + kTol) {
      incumbent_ = state;
      note_incumbent();
    }
    while (accepted_ < config_.max_iters && improve_once(state))
      accept(state);
  }

  template <typename Apply, typename Undo>
  bool try_move(PatternState &state, double delta, Apply apply, Undo undo) {
    if (delta <= kTol)
      return false;
    apply();
    if (feasible(state))
      return true;
    undo();
    return false;
  }

  bool improve_once(PatternState &state) {
    const auto &nb = config_.neighborhoods;
    if (nb.toggle) {
      for (std::size_t s = 0; s < m_; ++s) {
        for (std::size_t i = 0; i < n_; ++i) {
          const bool on = state.has(i, s);
          if (on && state.count(s) <= 2)
            continue;
          const double delta = on ? state.delta_drop(i, s) : state.delta_add(i, s);
          if (try_move(state, delta, [&] { state.set(i, s, !on); },
                       [&] { state.set(i, s, on); }))
            return true;
        }
      }
    }
    if (nb.replace) {
      for (std::size_t s = 0; s < m_; ++s) {
        for (std::size_t i = 0; i < n_; ++i) {
          if (!state.has(i, s))
            continue;
          for (std::size_t j = 0; j < n_; ++j) {
            if (state.has(j, s))
              continue;
            if (try_move(state, state.delta_exchange(i, j, s),
                         [&] {
                           state.set(i, s, false);
                           state.set(j, s, true);
                         },
                         [&] {
                           state.set(j, s, false);
                           state.set(i, s, true);
                         }))
              return true;
          }
        }
      }
    }
    if (nb.move) {
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t s = 0; s < m_; ++s) {
          if (!state.has(i, s) || state.count(s) <= 2)
            continue;
          for (std::size_t t = 0; t < m_; ++t) {
            if (t == s || state.has(i, t))
              continue;
            const double delta = state.delta_drop(i, s) + state.delta_add(i, t);
            if (try_move(state, delta,
                         [&] {
                           state.set(i, s, false);
                           state.set(i, t, true);
                         },
                         [&] {
                           state.set(i, t, false);
                           state.set(i, s, true);
                         }))
              return true;
          }
        }
      }
    }
    if (nb.swap) {
      for (std::size_t s = 0; s < m_; ++s) {
        for (std::size_t t = s + 1; t < m_; ++t) {
          for (std::size_t i = 0; i < n_; ++i) {
            if (!state.has(i, s) || state.has(i, t))
              continue;
            for (std::size_t j = 0; j < n_; ++j) {
              if (j == i || !state.has(j, t) || state.has(j, s))
                continue;
              const double delta =
                  state.delta_exchange(i, j, s) + state.delta_exchange(j, i, t);
              if (try_move(state, delta,
                           [&] {
                             state.set(i, s, false);
                             state.set(j, s, true);
                             state.set(j, t, false);
                             state.set(i, t, true);
                           },
                           [&] {
                             state.set(i, t, false);
                             state.set(j, t, true);
                             state.set(j, s, false);
                             state.set(i, s, true);
                           }))
                return true;
            }
          }
        }
      }
    }
    return false;
  }

  /// Random toggles that keep every store at two or more styles.
  void kick(PatternState &state, Rng &rng) const {
    if (n_ == 0 || m_ == 0)
      return;
    for (std::size_t k = 0; k < config_.kick_size; ++k) {
      const auto s = static_cast<std::size_t>(rng.below(m_));
      const auto i = static_cast<std::size_t>(rng.below(n_));
      const bool on = state.has(i, s);
      if (on && state.count(s) <= 2)
        continue;
      state.set(i, s, !on);
    }
  }

  const DistributionInstance &inst_;
  HeuristicConfig config_;
  std::size_t n_;
  std::size_t m_;
  PatternState incumbent_{inst_, AssignmentPattern(n_, m_)};
  std::size_t accepted_ = 0;
  std::vector<TracePoint> trace_;
};

} // namespace detail

/**
 * Greedy construction, flow-guided repair and first-improvement local search
 * over toggle, move and swap neighborhoods, followed by seeded
 * perturb-and-descend restarts. The variety-blind allocation also seeds the
 * search, so the result never scores below it. Deterministic for a given
 * config.
 */
inline SolveReport solve_heuristic(const DistributionInstance &inst,
                                   const HeuristicConfig &config = {}) {
  require_valid(inst);
  return detail::LocalSearch(inst, config).run();
}

} // namespace stylemix

#endif // STYLEMIX_SOLVER_HEURISTIC_HPP

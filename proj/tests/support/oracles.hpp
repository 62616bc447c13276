#ifndef STYLEMIX_TESTS_ORACLES_HPP
#define STYLEMIX_TESTS_ORACLES_HPP

// Slow, obviously-correct reference implementations used to cross-check the
// library. None of these call into the solver code they are checking.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stylemix/stylemix.hpp"

namespace stylemix::testing {

/// Integer band from the real band [(1-a)q, (1+a)q], found by scanning.
inline std::pair<Quantity, Quantity> oracle_band(double alpha, Quantity q) {
  const double lo = (1.0 - alpha) * static_cast<double>(q);
  const double hi = (1.0 + alpha) * static_cast<double>(q);
  Quantity first = -1, last = -1;
  for (Quantity t = 0; t <= 2 * q + 1; ++t) {
    if (static_cast<double>(t) >= lo - 1e-9 && static_cast<double>(t) <= hi + 1e-9) {
      if (first < 0)
        first = t;
      last = t;
    }
  }
  return {first, last};
}

inline Quantity oracle_cell_cap(const DistributionInstance &inst, std::size_t s) {
  const Quantity q = inst.stores[s].desired_qty;
  return inst.big_m_policy == BigMPolicy::PaperQs ? q : oracle_band(inst.alpha, q).second;
}

/// Exhaustive search over integer x for a fixed pattern.
class BruteQuantities {
public:
  BruteQuantities(const DistributionInstance &inst, const AssignmentPattern &y,
                  std::optional<Quantity> cap_override = std::nullopt)
      : inst_(inst), y_(y), cap_override_(cap_override) {
    for (std::size_t i = 0; i < inst.num_articles(); ++i)
      for (std::size_t s = 0; s < inst.num_stores(); ++s)
        if (y.assigned(i, s))
          cells_.push_back({i, s});
    used_.assign(inst.num_articles(), 0);
    load_.assign(inst.num_stores(), 0);
  }

  bool feasible() { return descend(0); }

private:
  bool descend(std::size_t k) {
    if (k == cells_.size()) {
      for (std::size_t s = 0; s < inst_.num_stores(); ++s) {
        const auto [lo, hi] = oracle_band(inst_.alpha, inst_.stores[s].desired_qty);
        if (load_[s] < lo || load_[s] > hi)
          return false;
      }
      return true;
    }
    const auto [i, s] = cells_[k];
    const Quantity lo = std::max<Quantity>(1, inst_.articles[i].min_qty);
    const Quantity hi = cap_override_ ? *cap_override_ : oracle_cell_cap(inst_, s);
    for (Quantity v = lo; v <= hi; ++v) {
      if (used_[i] + v > inst_.articles[i].planned_total)
        break;
      used_[i] += v;
      load_[s] += v;
      const bool ok = descend(k + 1);
      used_[i] -= v;
      load_[s] -= v;
      if (ok)
        return true;
    }
    return false;
  }

  const DistributionInstance &inst_;
  const AssignmentPattern &y_;
  std::optional<Quantity> cap_override_;
  std::vector<std::pair<std::size_t, std::size_t>> cells_;
  std::vector<Quantity> used_;
  std::vector<Quantity> load_;
};

inline bool brute_quantity_feasible(const DistributionInstance &inst, const AssignmentPattern &y,
                                    std::optional<Quantity> cap_override = std::nullopt) {
  return BruteQuantities(inst, y, cap_override).feasible();
}

/// MaxMean written out from the definition.
inline double oracle_max_mean(const DistanceMatrix &d, const std::vector<std::size_t> &set) {
  if (set.size() < 2)
    return 0.0;
  double sum = 0.0;
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b)
      sum += d(set[a], set[b]);
  return sum / static_cast<double>(set.size());
}

inline double oracle_objective(const DistributionInstance &inst, const AssignmentPattern &y) {
  double total = 0.0;
  for (std::size_t s = 0; s < inst.num_stores(); ++s)
    total += oracle_max_mean(inst.distances, y.members(s));
  return total;
}

struct OracleOptimum {
  double objective;
  AssignmentPattern pattern; ///< first optimum in store-major lexicographic order
};

/**
 * Optimum over every pattern (2^(n s) of them) with a pluggable quantity
 * check, so it stays usable at sizes where exhaustive x search is too slow.
 */
template <typename Check>
std::optional<OracleOptimum> enumerate_optimum(const DistributionInstance &inst, Check check) {
  const std::size_t n = inst.num_articles();
  const std::size_t m = inst.num_stores();
  const std::size_t bits = n * m;
  std::optional<OracleOptimum> best;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    // bit (bits-1-k) of code is cell k in store-major order, so counting up
    // visits patterns in lexicographic order.
    AssignmentPattern y(n, m);
    for (std::size_t k = 0; k < bits; ++k)
      if (code & (std::uint64_t{1} << (bits - 1 - k)))
        y.set(k % n, k / n, true);
    if (!y.satisfies_min_styles())
      continue;
    const double value = oracle_objective(inst, y);
    if (best && value <= best->objective + 1e-9)
      continue;
    if (!check(y))
      continue;
    best = OracleOptimum{value, y};
  }
  return best;
}

// ---------------------------------------------------------------------------
// LP text reader for witness checks.

struct ParsedRow {
  std::string name;
  std::map<std::string, double> coef;
  std::string sense;
  double rhs = 0.0;
};

struct ParsedLp {
  std::string direction;
  std::map<std::string, double> objective;
  std::vector<ParsedRow> rows;
  std::vector<std::string> bounds;   ///< "name >= 0" lines
  std::vector<std::string> generals;
  std::vector<std::string> binaries;
  bool ended = false;
};

inline bool parse_number(const std::string &tok, double &out) {
  std::istringstream in(tok);
  in >> out;
  return !in.fail() && in.eof();
}

inline std::map<std::string, double> parse_terms(const std::vector<std::string> &toks,
                                                 std::size_t &pos) {
  std::map<std::string, double> out;
  double sign = 1.0;
  double coef = 1.0;
  for (; pos < toks.size(); ++pos) {
    const auto &t = toks[pos];
    if (t == "<=" || t == ">=" || t == "=")
      break;
    if (t == "+") {
      sign = 1.0;
    } else if (t == "-") {
      sign = -1.0;
    } else if (double v; parse_number(t, v)) {
      coef = v;
    } else {
      out[t] += sign * coef;
      sign = 1.0;
      coef = 1.0;
    }
  }
  return out;
}

inline std::vector<std::string> tokens(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string t; in >> t;)
    out.push_back(t);
  return out;
}

inline ParsedLp parse_lp(const std::string &text) {
  ParsedLp lp;
  std::istringstream in(text);
  std::string section;
  std::vector<std::string> statements;
  std::string current;
  auto flush = [&] {
    if (!current.empty())
      statements.push_back(current);
    current.clear();
  };
  std::vector<std::pair<std::string, std::string>> entries; // section, statement
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("\\", 0) == 0)
      continue;
    if (!line.empty() && line[0] != ' ') {
      flush();
      for (auto &st : statements)
        entries.push_back({section, st});
      statements.clear();
      section = line;
      if (line == "End")
        lp.ended = true;
      continue;
    }
    if (line.rfind("  ", 0) == 0) {
      current += " " + line;
    } else {
      flush();
      current = line;
    }
  }
  flush();
  for (auto &st : statements)
    entries.push_back({section, st});

  for (const auto &[sec, st] : entries) {
    auto toks = tokens(st);
    if (sec == "Maximize" || sec == "Minimize") {
      lp.direction = sec;
      std::size_t pos = 1;
      lp.objective = parse_terms(toks, pos);
    } else if (sec == "Subject To") {
      ParsedRow row;
      row.name = toks.at(0).substr(0, toks[0].size() - 1);
      std::size_t pos = 1;
      row.coef = parse_terms(toks, pos);
      row.sense = toks.at(pos);
      parse_number(toks.at(pos + 1), row.rhs);
      lp.rows.push_back(std::move(row));
    } else if (sec == "Bounds") {
      lp.bounds.push_back(toks.at(0));
    } else if (sec == "Generals") {
      for (auto &t : toks)
        lp.generals.push_back(t);
    } else if (sec == "Binaries") {
      for (auto &t : toks)
        lp.binaries.push_back(t);
    }
  }
  return lp;
}

/// Linearization witness of a plan: x, y, r = 1/|I_s|, u = r y, w = r y y, v.
inline std::map<std::string, double> plan_witness(const DistributionInstance &inst,
                                                  const DistributionPlan &plan) {
  std::map<std::string, double> val;
  const std::size_t n = inst.num_articles();
  const std::size_t m = inst.num_stores();
  for (std::size_t s = 0; s < m; ++s) {
    const double k = static_cast<double>(plan.y.styles_at(s));
    const double r = 1.0 / k;
    val["r_" + std::to_string(s)] = r;
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string tag = std::to_string(i) + "_" + std::to_string(s);
      const double yi = plan.y.assigned(i, s) ? 1.0 : 0.0;
      val["x_" + tag] = static_cast<double>(plan.x(i, s));
      val["y_" + tag] = yi;
      val["u_" + tag] = r * yi;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double yj = plan.y.assigned(j, s) ? 1.0 : 0.0;
        const double w = r * yi * yj;
        val["w_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(s)] = w;
        v += inst.distances(i, j) * w;
      }
    }
    val["v_" + std::to_string(s)] = v;
  }
  return val;
}

/// Names of rows the witness violates by more than `tol`.
inline std::vector<std::string> violated_rows(const ParsedLp &lp,
                                              const std::map<std::string, double> &val,
                                              double tol) {
  std::vector<std::string> bad;
  for (const auto &row : lp.rows) {
    double lhs = 0.0;
    bool unknown = false;
    for (const auto &[name, c] : row.coef) {
      auto it = val.find(name);
      if (it == val.end()) {
        unknown = true;
        break;
      }
      lhs += c * it->second;
    }
    const bool ok = !unknown && ((row.sense == "<=" && lhs <= row.rhs + tol) ||
                                 (row.sense == ">=" && lhs >= row.rhs - tol) ||
                                 (row.sense == "=" && std::abs(lhs - row.rhs) <= tol));
    if (!ok)
      bad.push_back(row.name);
  }
  return bad;
}

inline double evaluate_lp_objective(const ParsedLp &lp, const std::map<std::string, double> &val) {
  double total = 0.0;
  for (const auto &[name, c] : lp.objective)
    total += c * val.at(name);
  return total;
}

inline std::size_t count_prefix(const ParsedLp &lp, const std::string &prefix) {
  std::size_t k = 0;
  for (const auto &row : lp.rows)
    if (row.name.rfind(prefix, 0) == 0)
      ++k;
  return k;
}

} // namespace stylemix::testing

#endif // STYLEMIX_TESTS_ORACLES_HPP

#ifndef STYLEMIX_SOLVER_LP_EXPORT_HPP
#define STYLEMIX_SOLVER_LP_EXPORT_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stylemix/detail/text.hpp"
#include "stylemix/instance.hpp"

namespace stylemix {

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct LpTerm {
  double coef;
  std::string var;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  RowSense sense;
  double rhs;
};

enum class VarKind { Continuous, Integer, Binary };

struct LpVariable {
  std::string name;
  VarKind kind;
};

/// The MaxMean distribution MILP with the ratio objective linearized through
/// r_s = 1 / sum_i y_is, u_is = r_s y_is and w_ijs = r_s y_is y_js.
struct LpModel {
  std::vector<std::string> comments;
  std::vector<LpTerm> objective; ///< maximized
  std::vector<LpRow> rows;
  std::vector<LpVariable> variables;
};

namespace lp_names {
inline std::string x(std::size_t i, std::size_t s) {
  return "x_" + std::to_string(i) + "_" + std::to_string(s);
}
inline std::string y(std::size_t i, std::size_t s) {
  return "y_" + std::to_string(i) + "_" + std::to_string(s);
}
inline std::string u(std::size_t i, std::size_t s) {
  return "u_" + std::to_string(i) + "_" + std::to_string(s);
}
inline std::string w(std::size_t i, std::size_t j, std::size_t s) {
  return "w_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(s);
}
inline std::string r(std::size_t s) { return "r_" + std::to_string(s); }
inline std::string v(std::size_t s) { return "v_" + std::to_string(s); }
} // namespace lp_names

/**
 * Rows in block order: store bands (2s), resource (n), min-quantity and
 * big-M coupling (2ns), at least two styles (s), u-linearization (3ns + s),
 * w-linearization (4 s n(n-1)/2), variety definitions (s). Store bands use
 * the integer rounding ceil((1-a)q_s) / floor((1+a)q_s), equivalent for
 * integer x.
 */
inline LpModel build_lp_model(const DistributionInstance &inst) {
  require_valid(inst);
  using namespace lp_names;
  const std::size_t n = inst.num_articles();
  const std::size_t m = inst.num_stores();
  LpModel model;

  model.comments.push_back("MaxMean style distribution model");
  model.comments.push_back("alpha " + detail::format_double(inst.alpha) +
                           ", big_m_policy " + std::string(to_string(inst.big_m_policy)));
  for (std::size_t i = 0; i < n; ++i)
    model.comments.push_back("article " + std::to_string(i) + " = " + inst.articles[i].id);
  for (std::size_t s = 0; s < m; ++s)
    model.comments.push_back("store " + std::to_string(s) + " = " + inst.stores[s].id);

  for (std::size_t s = 0; s < m; ++s)
    model.objective.push_back({1.0, v(s)});

  auto row = [&](std::string name, std::vector<LpTerm> terms, RowSense sense, double rhs) {
    model.rows.push_back({std::move(name), std::move(terms), sense, rhs});
  };
  const std::string S = "_";

  for (std::size_t s = 0; s < m; ++s) {
    std::vector<LpTerm> terms;
    for (std::size_t i = 0; i < n; ++i)
      terms.push_back({1.0, x(i, s)});
    row("qmax_" + std::to_string(s), terms, RowSense::LessEqual,
        static_cast<double>(store_upper(inst, s)));
    row("qmin_" + std::to_string(s), terms, RowSense::GreaterEqual,
        static_cast<double>(store_lower(inst, s)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LpTerm> terms;
    for (std::size_t s = 0; s < m; ++s)
      terms.push_back({1.0, x(i, s)});
    row("res_" + std::to_string(i), terms, RowSense::LessEqual,
        static_cast<double>(inst.articles[i].planned_total));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < m; ++s) {
      const std::string tag = std::to_string(i) + S + std::to_string(s);
      row("minq_" + tag,
          {{1.0, x(i, s)}, {-static_cast<double>(inst.articles[i].min_qty), y(i, s)}},
          RowSense::GreaterEqual, 0.0);
      row("bigm_" + tag,
          {{1.0, x(i, s)}, {-static_cast<double>(cell_capacity(inst, i, s)), y(i, s)}},
          RowSense::LessEqual, 0.0);
    }
  }
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<LpTerm> terms;
    for (std::size_t i = 0; i < n; ++i)
      terms.push_back({1.0, y(i, s)});
    row("nsty_" + std::to_string(s), terms, RowSense::GreaterEqual, 2.0);
  }
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::string tag = std::to_string(i) + S + std::to_string(s);
      row("ulo_" + tag, {{1.0, u(i, s)}, {-1.0, r(s)}, {-1.0, y(i, s)}},
          RowSense::GreaterEqual, -1.0);
      row("uhr_" + tag, {{1.0, u(i, s)}, {-1.0, r(s)}}, RowSense::LessEqual, 0.0);
      row("uhy_" + tag, {{1.0, u(i, s)}, {-1.0, y(i, s)}}, RowSense::LessEqual, 0.0);
    }
    std::vector<LpTerm> terms;
    for (std::size_t i = 0; i < n; ++i)
      terms.push_back({1.0, u(i, s)});
    row("usum_" + std::to_string(s), terms, RowSense::Equal, 1.0);
  }
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::string tag =
            std::to_string(i) + S + std::to_string(j) + S + std::to_string(s);
        const std::string wv = w(i, j, s);
        row("wlo_" + tag, {{1.0, wv}, {-1.0, r(s)}, {-1.0, y(i, s)}, {-1.0, y(j, s)}},
            RowSense::GreaterEqual, -2.0);
        row("whi_" + tag, {{1.0, wv}, {-1.0, y(i, s)}}, RowSense::LessEqual, 0.0);
        row("whj_" + tag, {{1.0, wv}, {-1.0, y(j, s)}}, RowSense::LessEqual, 0.0);
        row("whr_" + tag, {{1.0, wv}, {-1.0, r(s)}}, RowSense::LessEqual, 0.0);
      }
    }
  }
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<LpTerm> terms{{1.0, v(s)}};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (inst.distances(i, j) != 0.0)
          terms.push_back({-inst.distances(i, j), w(i, j, s)});
    row("vdef_" + std::to_string(s), terms, RowSense::Equal, 0.0);
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < m; ++s)
      model.variables.push_back({x(i, s), VarKind::Integer});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < m; ++s)
      model.variables.push_back({y(i, s), VarKind::Binary});
  for (std::size_t s = 0; s < m; ++s)
    model.variables.push_back({r(s), VarKind::Continuous});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < m; ++s)
      model.variables.push_back({u(i, s), VarKind::Continuous});
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        model.variables.push_back({w(i, j, s), VarKind::Continuous});
  for (std::size_t s = 0; s < m; ++s)
    model.variables.push_back({v(s), VarKind::Continuous});
  return model;
}

namespace detail {

inline void append_terms(std::string &out, const std::string &head,
                         const std::vector<LpTerm> &terms) {
  constexpr std::size_t kWrap = 100;
  std::string line = head;
  bool first = true;
  for (const auto &t : terms) {
    std::string piece;
    const double mag = t.coef < 0 ? -t.coef : t.coef;
    if (!first || t.coef < 0)
      piece += t.coef < 0 ? (first ? "- " : " - ") : " + ";
    if (mag != 1.0)
      piece += format_double(mag) + " ";
    piece += t.var;
    if (line.size() + piece.size() > kWrap && !first) {
      out += line + "\n";
      line = "  ";
      if (piece.front() == ' ')
        piece.erase(0, 1);
    }
    line += piece;
    first = false;
  }
  if (terms.empty())
    line += "0";
  out += line;
}

} // namespace detail

/// CPLEX LP text: Maximize / Subject To / Bounds / Generals / Binaries / End.
inline std::string render_lp(const LpModel &model) {
  std::string out;
  for (const auto &c : model.comments)
    out += "\\ " + c + "\n";
  out += "Maximize\n";
  detail::append_terms(out, " obj: ", model.objective);
  out += "\nSubject To\n";
  for (const auto &row : model.rows) {
    detail::append_terms(out, " " + row.name + ": ", row.terms);
    switch (row.sense) {
    case RowSense::LessEqual: out += " <= "; break;
    case RowSense::GreaterEqual: out += " >= "; break;
    case RowSense::Equal: out += " = "; break;
    }
    out += detail::format_double(row.rhs) + "\n";
  }
  out += "Bounds\n";
  for (const auto &v : model.variables)
    if (v.kind == VarKind::Continuous)
      out += " " + v.name + " >= 0\n";
  out += "Generals\n";
  for (const auto &v : model.variables)
    if (v.kind == VarKind::Integer)
      out += " " + v.name + "\n";
  out += "Binaries\n";
  for (const auto &v : model.variables)
    if (v.kind == VarKind::Binary)
      out += " " + v.name + "\n";
  out += "End\n";
  return out;
}

inline std::string export_lp(const DistributionInstance &inst) {
  return render_lp(build_lp_model(inst));
}

} // namespace stylemix

#endif // STYLEMIX_SOLVER_LP_EXPORT_HPP

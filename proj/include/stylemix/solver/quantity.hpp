#ifndef STYLEMIX_SOLVER_QUANTITY_HPP
#define STYLEMIX_SOLVER_QUANTITY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stylemix/instance.hpp"
#include "stylemix/plan.hpp"
#include "stylemix/solver/max_flow.hpp"

namespace stylemix {

enum class CertificateKind {
  GlobalSupply, ///< total planned stock below the stores' combined lower bands
  CellBounds,   ///< an assigned cell whose minimum exceeds its big-M cap
  Cut,          ///< a network cut from the circulation's min cut
};

inline std::string_view to_string(CertificateKind kind) {
  switch (kind) {
  case CertificateKind::GlobalSupply: return "global_supply";
  case CertificateKind::CellBounds: return "cell_bounds";
  case CertificateKind::Cut: return "cut";
  }
  return "unknown";
}

/**
 * Why no integer x exists for a pattern: across the named articles and
 * stores, `required` units are forced in by lower bounds while at most
 * `available` units can leave through upper bounds.
 */
struct InfeasibilityCertificate {
  CertificateKind kind = CertificateKind::Cut;
  std::vector<std::size_t> articles;
  std::vector<std::size_t> stores;
  bool includes_supply = false; // the planned-stock source is on the cut side
  Quantity required = 0;
  Quantity available = 0;

  std::string describe(const DistributionInstance &inst) const {
    auto names = [](const auto &items, const std::vector<std::size_t> &idx) {
      std::string out = "{";
      for (std::size_t k = 0; k < idx.size(); ++k)
        out += (k ? "," : "") + items[idx[k]].id;
      return out + "}";
    };
    std::string msg = std::string(to_string(kind)) + ": articles " +
                      names(inst.articles, articles) + ", stores " +
                      names(inst.stores, stores) +
                      (includes_supply ? " with the planned stock" : "") +
                      " need at least " + std::to_string(required) +
                      " units but at most " + std::to_string(available) +
                      " can be routed";
    return msg;
  }
};

struct QuantityResult {
  bool feasible = false;
  Grid<Quantity> x;
  std::optional<InfeasibilityCertificate> certificate;
  Quantity deficit = 0; ///< unroutable lower-bound units, 0 when feasible
};

namespace detail {

/**
 * Flow feasibility for the stores flagged in `active` only. Inactive stores
 * and their cells are dropped, which relaxes the full problem; the exact
 * solver uses this to prune partial patterns.
 */
inline QuantityResult check_quantities(const DistributionInstance &inst,
                                       const AssignmentPattern &pattern,
                                       const std::vector<bool> &active) {
  const std::size_t n = inst.num_articles();
  const std::size_t m = inst.num_stores();
  QuantityResult result;
  result.x = Grid<Quantity>(n, m, 0);

  Quantity supply = 0;
  for (const auto &a : inst.articles)
    supply += a.planned_total;
  Quantity demand = 0;
  for (std::size_t s = 0; s < m; ++s)
    if (active[s])
      demand += store_lower(inst, s);
  if (supply < demand) {
    InfeasibilityCertificate cert;
    cert.kind = CertificateKind::GlobalSupply;
    for (std::size_t i = 0; i < n; ++i)
      cert.articles.push_back(i);
    for (std::size_t s = 0; s < m; ++s)
      if (active[s])
        cert.stores.push_back(s);
    cert.required = demand;
    cert.available = supply;
    result.certificate = cert;
    result.deficit = demand - supply;
    return result;
  }

  for (std::size_t s = 0; s < m; ++s) {
    if (!active[s])
      continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!pattern.assigned(i, s))
        continue;
      const Quantity lo = cell_minimum(inst, i);
      const Quantity hi = cell_capacity(inst, i, s);
      if (lo > hi) {
        InfeasibilityCertificate cert;
        cert.kind = CertificateKind::CellBounds;
        cert.articles = {i};
        cert.stores = {s};
        cert.required = lo;
        cert.available = hi;
        result.certificate = cert;
        result.deficit = lo - hi;
        return result;
      }
    }
  }

  // source, articles, stores, sink
  const std::size_t source = 0;
  const std::size_t sink = n + m + 1;
  auto article_node = [](std::size_t i) { return 1 + i; };
  auto store_node = [n](std::size_t s) { return 1 + n + s; };

  BoundedCirculation circ(n + m + 2);
  circ.add_edge(sink, source, 0, FlowNetwork::kInfinite);
  for (std::size_t i = 0; i < n; ++i)
    circ.add_edge(source, article_node(i), 0, inst.articles[i].planned_total);
  Grid<std::size_t> cell_edge(n, m, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < m; ++s)
      if (active[s] && pattern.assigned(i, s))
        cell_edge(i, s) = circ.add_edge(article_node(i), store_node(s),
                                        cell_minimum(inst, i),
                                        cell_capacity(inst, i, s));
  for (std::size_t s = 0; s < m; ++s)
    if (active[s])
      circ.add_edge(store_node(s), sink, store_lower(inst, s),
                    store_upper(inst, s));

  if (circ.solve()) {
    result.feasible = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t s = 0; s < m; ++s)
        if (active[s] && pattern.assigned(i, s))
          result.x(i, s) = circ.flow(cell_edge(i, s));
    return result;
  }

  const auto side = circ.cut_side();
  const auto [in_lower, out_upper] = circ.cut_totals(side);
  InfeasibilityCertificate cert;
  cert.kind = CertificateKind::Cut;
  for (std::size_t i = 0; i < n; ++i)
    if (side[article_node(i)])
      cert.articles.push_back(i);
  for (std::size_t s = 0; s < m; ++s)
    if (side[store_node(s)])
      cert.stores.push_back(s);
  cert.includes_supply = side[source];
  cert.required = in_lower;
  cert.available = out_upper;
  result.certificate = cert;
  result.deficit = circ.deficit();
  return result;
}

} // namespace detail

/**
 * Integer quantities x for a fixed assignment pattern, or a certificate.
 *
 * Bounds per assigned cell: max(m_i, 1) <= x_is <= M_is; per article:
 * sum_s x_is <= p_i; per store: ceil((1-a)q_s) <= sum_i x_is <=
 * floor((1+a)q_s). Unassigned cells are 0. Throws PatternViolatesMinStyles
 * when a store has fewer than two styles.
 */
inline QuantityResult quantity_feasible(const DistributionInstance &inst,
                                        const AssignmentPattern &pattern) {
  if (pattern.num_articles() != inst.num_articles() ||
      pattern.num_stores() != inst.num_stores())
    throw Error(ErrorCode::InvalidConfig, "pattern shape does not match instance");
  for (std::size_t s = 0; s < pattern.num_stores(); ++s)
    if (pattern.styles_at(s) < 2)
      throw Error(ErrorCode::PatternViolatesMinStyles,
                  "store \"" + inst.stores[s].id + "\" has " +
                      std::to_string(pattern.styles_at(s)) + " styles");
  return detail::check_quantities(inst, pattern,
                                  std::vector<bool>(inst.num_stores(), true));
}

} // namespace stylemix

#endif // STYLEMIX_SOLVER_QUANTITY_HPP

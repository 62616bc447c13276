#ifndef STYLEMIX_INSTANCE_HPP
#define STYLEMIX_INSTANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stylemix/catalog.hpp"
#include "stylemix/distance_matrix.hpp"
#include "stylemix/error.hpp"

namespace stylemix {

using Quantity = std::int64_t;

struct Article {
  std::string id;
  Quantity planned_total = 0; // p_i
  Quantity min_qty = 0;       // m_i

  bool operator==(const Article &) const = default;
};

struct Store {
  std::string id;
  Quantity desired_qty = 1; // q_s

  bool operator==(const Store &) const = default;
};

/// How the big-M coupling x_is <= M * y_is picks M.
enum class BigMPolicy {
  PaperQs,    ///< M = q_s
  TolerantQs, ///< M = floor((1 + alpha) q_s), never tighter than the band
};

inline std::string_view to_string(BigMPolicy policy) {
  return policy == BigMPolicy::PaperQs ? "paper_qs" : "tolerant_qs";
}

inline std::optional<BigMPolicy> parse_big_m_policy(std::string_view name) {
  if (name == "paper_qs")
    return BigMPolicy::PaperQs;
  if (name == "tolerant_qs")
    return BigMPolicy::TolerantQs;
  return std::nullopt;
}

struct DistributionInstance {
  std::vector<Article> articles;
  std::vector<Store> stores;
  double alpha = 0.0;
  BigMPolicy big_m_policy = BigMPolicy::PaperQs;
  DistanceMatrix distances;

  std::size_t num_articles() const noexcept { return articles.size(); }
  std::size_t num_stores() const noexcept { return stores.size(); }
};

// Slack absorbing representation error in (1 +- alpha) * q_s, e.g.
// 0.8 * 10 evaluating to 8.000000000000002.
inline constexpr double kBandSlack = 1e-9;

/// ceil((1 - alpha) q_s): the smallest integer total a store may receive.
inline Quantity store_lower(const DistributionInstance &inst, std::size_t s) {
  const double bound =
      (1.0 - inst.alpha) * static_cast<double>(inst.stores[s].desired_qty);
  return std::max<Quantity>(0, static_cast<Quantity>(std::ceil(bound - kBandSlack)));
}

/// floor((1 + alpha) q_s): the largest integer total a store may receive.
inline Quantity store_upper(const DistributionInstance &inst, std::size_t s) {
  const double bound =
      (1.0 + inst.alpha) * static_cast<double>(inst.stores[s].desired_qty);
  return static_cast<Quantity>(std::floor(bound + kBandSlack));
}

/// M_is under the instance's big-M policy.
inline Quantity cell_capacity(const DistributionInstance &inst,
                              std::size_t /*article*/, std::size_t s) {
  return inst.big_m_policy == BigMPolicy::PaperQs ? inst.stores[s].desired_qty
                                                  : store_upper(inst, s);
}

/// Lower bound on x_is when y_is = 1; at least one unit so y == (x >= 1).
inline Quantity cell_minimum(const DistributionInstance &inst, std::size_t i) {
  return std::max<Quantity>(1, inst.articles[i].min_qty);
}

enum class ViolationKind {
  MinExceedsPlanned,
  NegativeQuantity,
  ZeroMinQty,
  NonPositiveDesired,
  AlphaOutOfRange,
  DistanceSizeMismatch,
  DuplicateArticleId,
  DuplicateStoreId,
  EmptyId,
};

inline std::string_view to_string(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::MinExceedsPlanned: return "MinExceedsPlanned";
  case ViolationKind::NegativeQuantity: return "NegativeQuantity";
  case ViolationKind::ZeroMinQty: return "ZeroMinQty";
  case ViolationKind::NonPositiveDesired: return "NonPositiveDesired";
  case ViolationKind::AlphaOutOfRange: return "AlphaOutOfRange";
  case ViolationKind::DistanceSizeMismatch: return "DistanceSizeMismatch";
  case ViolationKind::DuplicateArticleId: return "DuplicateArticleId";
  case ViolationKind::DuplicateStoreId: return "DuplicateStoreId";
  case ViolationKind::EmptyId: return "EmptyId";
  }
  return "Unknown";
}

struct Violation {
  ViolationKind kind;
  std::string field;  // e.g. "articles[2].min_qty"
  std::string detail; // the bound that was breached

  std::string describe() const {
    return std::string(to_string(kind)) + " at " + field + ": " + detail;
  }
};

inline std::vector<Violation> validate_instance(const DistributionInstance &inst) {
  std::vector<Violation> out;
  if (!std::isfinite(inst.alpha) || inst.alpha < 0.0 || inst.alpha >= 1.0)
    out.push_back({ViolationKind::AlphaOutOfRange, "alpha",
                   "must lie in [0, 1), got " + detail::format_double(inst.alpha)});

  std::set<std::string> ids;
  for (std::size_t i = 0; i < inst.articles.size(); ++i) {
    const auto &a = inst.articles[i];
    const std::string field = "articles[" + std::to_string(i) + "]";
    if (a.id.empty())
      out.push_back({ViolationKind::EmptyId, field + ".id", "must be non-empty"});
    else if (!ids.insert(a.id).second)
      out.push_back({ViolationKind::DuplicateArticleId, field + ".id",
                     "\"" + a.id + "\" already used"});
    if (a.planned_total < 0)
      out.push_back({ViolationKind::NegativeQuantity, field + ".planned_total",
                     "must be >= 0"});
    if (a.min_qty < 1)
      out.push_back({ViolationKind::ZeroMinQty, field + ".min_qty",
                     "must be >= 1, got " + std::to_string(a.min_qty)});
    if (a.min_qty > a.planned_total)
      out.push_back({ViolationKind::MinExceedsPlanned, field + ".min_qty",
                     "min_qty " + std::to_string(a.min_qty) +
                         " exceeds planned_total " +
                         std::to_string(a.planned_total)});
  }

  ids.clear();
  for (std::size_t s = 0; s < inst.stores.size(); ++s) {
    const auto &st = inst.stores[s];
    const std::string field = "stores[" + std::to_string(s) + "]";
    if (st.id.empty())
      out.push_back({ViolationKind::EmptyId, field + ".id", "must be non-empty"});
    else if (!ids.insert(st.id).second)
      out.push_back({ViolationKind::DuplicateStoreId, field + ".id",
                     "\"" + st.id + "\" already used"});
    if (st.desired_qty < 1)
      out.push_back({ViolationKind::NonPositiveDesired, field + ".desired_qty",
                     "must be >= 1, got " + std::to_string(st.desired_qty)});
  }

  if (inst.distances.size() != inst.articles.size())
    out.push_back({ViolationKind::DistanceSizeMismatch, "distances.n",
                   "expected " + std::to_string(inst.articles.size()) +
                       ", got " + std::to_string(inst.distances.size())});
  return out;
}

/// Throws InvalidInstance listing every violation.
inline void require_valid(const DistributionInstance &inst) {
  const auto violations = validate_instance(inst);
  if (violations.empty())
    return;
  std::string msg;
  for (const auto &v : violations) {
    if (!msg.empty())
      msg += "; ";
    msg += v.describe();
  }
  throw Error(ErrorCode::InvalidInstance, msg);
}

namespace detail {

inline Quantity integral_field(const nlohmann::json &obj, const char *key,
                               const std::string &where) {
  if (!obj.contains(key))
    throw Error(ErrorCode::MalformedInput, where + ": missing \"" + key + "\"");
  const auto &v = obj[key];
  if (v.is_number_integer())
    return v.get<Quantity>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d))
      return static_cast<Quantity>(d);
  }
  throw Error(ErrorCode::MalformedInput,
              where + "." + key + " must be an integer");
}

inline std::string string_field(const nlohmann::json &obj, const char *key,
                                const std::string &where) {
  if (!obj.contains(key) || !obj[key].is_string())
    throw Error(ErrorCode::MalformedInput,
                where + ": \"" + key + "\" must be a string");
  return obj[key].get<std::string>();
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::MalformedInput, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline CatalogFormat format_for(const std::filesystem::path &path) {
  return path.extension() == ".json" ? CatalogFormat::Json : CatalogFormat::Csv;
}

} // namespace detail

/// Loads a catalog file, choosing the format from the extension (.json or CSV).
inline FeatureCatalog load_catalog_file(const std::filesystem::path &path) {
  return load_catalog(detail::read_file(path), detail::format_for(path));
}

/**
 * Parses the instance JSON document.
 *
 * `distances` is either {"n", "entries"} or {"catalog_ref", "metric",
 * "normalize"?}; a relative catalog_ref resolves against `base_dir`.
 * Structural problems throw MalformedInput; semantic bounds are left to
 * validate_instance.
 */
inline DistributionInstance
parse_instance(const nlohmann::json &doc,
               const std::filesystem::path &base_dir = {}) {
  if (!doc.is_object())
    throw Error(ErrorCode::MalformedInput, "instance must be a JSON object");
  DistributionInstance inst;
  if (!doc.contains("alpha") || !doc["alpha"].is_number())
    throw Error(ErrorCode::MalformedInput, "\"alpha\" must be a number");
  inst.alpha = doc["alpha"].get<double>();
  if (doc.contains("big_m_policy")) {
    const auto &p = doc["big_m_policy"];
    const auto policy =
        p.is_string() ? parse_big_m_policy(p.get<std::string>()) : std::nullopt;
    if (!policy)
      throw Error(ErrorCode::MalformedInput,
                  "big_m_policy must be \"paper_qs\" or \"tolerant_qs\"");
    inst.big_m_policy = *policy;
  }

  if (!doc.contains("articles") || !doc["articles"].is_array())
    throw Error(ErrorCode::MalformedInput, "\"articles\" must be an array");
  for (std::size_t i = 0; i < doc["articles"].size(); ++i) {
    const auto &a = doc["articles"][i];
    const std::string where = "articles[" + std::to_string(i) + "]";
    if (!a.is_object())
      throw Error(ErrorCode::MalformedInput, where + " must be an object");
    inst.articles.push_back({detail::string_field(a, "id", where),
                             detail::integral_field(a, "planned_total", where),
                             detail::integral_field(a, "min_qty", where)});
  }

  if (!doc.contains("stores") || !doc["stores"].is_array())
    throw Error(ErrorCode::MalformedInput, "\"stores\" must be an array");
  for (std::size_t s = 0; s < doc["stores"].size(); ++s) {
    const auto &st = doc["stores"][s];
    const std::string where = "stores[" + std::to_string(s) + "]";
    if (!st.is_object())
      throw Error(ErrorCode::MalformedInput, where + " must be an object");
    inst.stores.push_back({detail::string_field(st, "id", where),
                           detail::integral_field(st, "desired_qty", where)});
  }

  if (!doc.contains("distances") || !doc["distances"].is_object())
    throw Error(ErrorCode::MalformedInput, "\"distances\" must be an object");
  const auto &dist = doc["distances"];
  if (dist.contains("catalog_ref")) {
    std::filesystem::path ref =
        detail::string_field(dist, "catalog_ref", "distances");
    if (ref.is_relative())
      ref = base_dir / ref;
    Metric metric = Metric::SquaredEuclidean;
    if (dist.contains("metric")) {
      const auto m = dist["metric"].is_string()
                         ? parse_metric(dist["metric"].get<std::string>())
                         : std::nullopt;
      if (!m)
        throw Error(ErrorCode::MalformedInput,
                    "distances.metric must be \"squared_euclidean\" or "
                    "\"euclidean\"");
      metric = *m;
    }
    auto catalog = load_catalog_file(ref);
    if (dist.value("normalize", false))
      catalog = catalog.normalized();
    inst.distances = distance_matrix(catalog, metric);
  } else {
    inst.distances = distance_matrix_from_json(dist);
  }
  return inst;
}

inline DistributionInstance load_instance_file(const std::filesystem::path &path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::MalformedInput, path.string() + ": " + e.what());
  }
  return parse_instance(doc, path.parent_path());
}

inline nlohmann::json to_json(const DistributionInstance &inst) {
  nlohmann::json doc;
  doc["alpha"] = inst.alpha;
  doc["big_m_policy"] = std::string(to_string(inst.big_m_policy));
  doc["articles"] = nlohmann::json::array();
  for (const auto &a : inst.articles)
    doc["articles"].push_back(
        {{"id", a.id}, {"planned_total", a.planned_total}, {"min_qty", a.min_qty}});
  doc["stores"] = nlohmann::json::array();
  for (const auto &s : inst.stores)
    doc["stores"].push_back({{"id", s.id}, {"desired_qty", s.desired_qty}});
  doc["distances"] = to_json(inst.distances);
  return doc;
}

} // namespace stylemix

#endif // STYLEMIX_INSTANCE_HPP

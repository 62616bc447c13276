#ifndef STYLEMIX_CATALOG_HPP
#define STYLEMIX_CATALOG_HPP

#include <cmath>
#include <cstddef>
#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "stylemix/detail/text.hpp"
#include "stylemix/error.hpp"

namespace stylemix {

struct StyleRecord {
  std::string id;
  std::vector<double> vector;

  bool operator==(const StyleRecord &) const = default;
};

enum class CatalogFormat { Csv, Json };

/**
 * Ordered collection of styles and their embedding vectors.
 *
 * A constructed catalog always holds unique non-empty ids and finite vectors
 * of one common dimension D >= 1. An empty catalog has dimension 0.
 */
class FeatureCatalog {
public:
  FeatureCatalog() = default;

  explicit FeatureCatalog(std::vector<StyleRecord> styles)
      : styles_(std::move(styles)) {
    validate();
  }

  std::size_t size() const noexcept { return styles_.size(); }
  bool empty() const noexcept { return styles_.empty(); }
  std::size_t dimension() const noexcept {
    return styles_.empty() ? 0 : styles_.front().vector.size();
  }

  const std::vector<StyleRecord> &styles() const noexcept { return styles_; }
  const StyleRecord &operator[](std::size_t i) const { return styles_[i]; }

  /// Copy with every vector scaled to unit L2 norm; zero vectors stay zero.
  FeatureCatalog normalized() const {
    std::vector<StyleRecord> out = styles_;
    for (auto &style : out) {
      double norm = 0.0;
      for (double v : style.vector)
        norm += v * v;
      norm = std::sqrt(norm);
      if (norm > 0.0)
        for (double &v : style.vector)
          v /= norm;
    }
    return FeatureCatalog(std::move(out));
  }

  bool operator==(const FeatureCatalog &) const = default;

private:
  void validate() const {
    std::unordered_set<std::string> seen;
    const std::size_t dim = dimension();
    for (std::size_t row = 0; row < styles_.size(); ++row) {
      const auto &style = styles_[row];
      const std::string where =
          "row " + std::to_string(row + 1) + " (\"" + style.id + "\")";
      if (style.id.empty())
        throw Error(ErrorCode::MalformedInput,
                    "row " + std::to_string(row + 1) + ": empty style id");
      if (!seen.insert(style.id).second)
        throw Error(ErrorCode::DuplicateId, "\"" + style.id + "\" at " + where);
      if (style.vector.empty())
        throw Error(ErrorCode::MalformedInput, where + ": no vector entries");
      if (style.vector.size() != dim)
        throw Error(ErrorCode::DimensionMismatch,
                    where + ": expected " + std::to_string(dim) +
                        " entries, found " +
                        std::to_string(style.vector.size()));
      for (std::size_t k = 0; k < style.vector.size(); ++k)
        if (!std::isfinite(style.vector[k]))
          throw Error(ErrorCode::NonFiniteValue,
                      where + ", entry " + std::to_string(k + 1));
    }
  }

  std::vector<StyleRecord> styles_;
};

namespace detail {

inline FeatureCatalog parse_catalog_csv(std::string_view text) {
  std::vector<StyleRecord> styles;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty())
      continue;
    const auto fields = split(line, ',');
    StyleRecord record;
    record.id = std::string(trim(fields.front()));
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const auto field = trim(fields[k]);
      const auto value = parse_double(field);
      if (!value)
        throw Error(ErrorCode::MalformedInput,
                    "line " + std::to_string(line_no) + " (\"" + record.id +
                        "\"), field " + std::to_string(k + 1) + ": '" +
                        std::string(field) + "' is not a number");
      record.vector.push_back(*value);
    }
    styles.push_back(std::move(record));
  }
  return FeatureCatalog(std::move(styles));
}

inline FeatureCatalog parse_catalog_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }
  if (!doc.is_array())
    throw Error(ErrorCode::MalformedInput, "catalog JSON must be an array");
  std::vector<StyleRecord> styles;
  for (std::size_t row = 0; row < doc.size(); ++row) {
    const auto &item = doc[row];
    const std::string where = "element " + std::to_string(row);
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string() ||
        !item.contains("vector") || !item["vector"].is_array())
      throw Error(ErrorCode::MalformedInput,
                  where + ": expected {\"id\": string, \"vector\": [numbers]}");
    StyleRecord record;
    record.id = item["id"].get<std::string>();
    for (const auto &v : item["vector"]) {
      if (!v.is_number())
        throw Error(ErrorCode::MalformedInput,
                    where + " (\"" + record.id + "\"): non-numeric entry");
      record.vector.push_back(v.get<double>());
    }
    styles.push_back(std::move(record));
  }
  return FeatureCatalog(std::move(styles));
}

} // namespace detail

inline FeatureCatalog load_catalog(std::string_view text,
                                   CatalogFormat format) {
  return format == CatalogFormat::Csv ? detail::parse_catalog_csv(text)
                                      : detail::parse_catalog_json(text);
}

inline FeatureCatalog load_catalog(std::istream &in, CatalogFormat format) {
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return load_catalog(std::string_view(text), format);
}

/// Ids containing ',' or line breaks cannot be represented in CSV.
inline std::string to_csv(const FeatureCatalog &catalog) {
  std::ostringstream out;
  for (const auto &style : catalog.styles()) {
    if (style.id.find_first_of(",\n\r") != std::string::npos)
      throw Error(ErrorCode::MalformedInput,
                  "style id \"" + style.id + "\" is not CSV-safe");
    out << style.id;
    for (double v : style.vector)
      out << ',' << detail::format_double(v);
    out << '\n';
  }
  return out.str();
}

inline nlohmann::json to_json(const FeatureCatalog &catalog) {
  auto doc = nlohmann::json::array();
  for (const auto &style : catalog.styles())
    doc.push_back({{"id", style.id}, {"vector", style.vector}});
  return doc;
}

} // namespace stylemix

#endif // STYLEMIX_CATALOG_HPP

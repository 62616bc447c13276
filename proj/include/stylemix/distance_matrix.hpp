#ifndef STYLEMIX_DISTANCE_MATRIX_HPP
#define STYLEMIX_DISTANCE_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stylemix/catalog.hpp"
#include "stylemix/error.hpp"

namespace stylemix {

enum class Metric { SquaredEuclidean, Euclidean };

inline std::string_view to_string(Metric metric) {
  return metric == Metric::SquaredEuclidean ? "squared_euclidean"
                                            : "euclidean";
}

inline std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "squared_euclidean" || name == "squared" || name == "sqeuclidean")
    return Metric::SquaredEuclidean;
  if (name == "euclidean")
    return Metric::Euclidean;
  return std::nullopt;
}

/// Symmetric, zero-diagonal, non-negative n x n dissimilarities, row-major.
class DistanceMatrix {
public:
  DistanceMatrix() = default;

  /// Validates the invariants; throws InvalidDistanceMatrix naming the entry.
  DistanceMatrix(std::size_t n, std::vector<double> entries)
      : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_)
      throw Error(ErrorCode::InvalidDistanceMatrix,
                  "expected " + std::to_string(n_ * n_) + " entries, found " +
                      std::to_string(entries_.size()));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const double v = (*this)(i, j);
        const std::string at =
            "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (!std::isfinite(v))
          throw Error(ErrorCode::InvalidDistanceMatrix, "non-finite entry " + at);
        if (v < 0.0)
          throw Error(ErrorCode::InvalidDistanceMatrix, "negative entry " + at);
        if (i == j && v != 0.0)
          throw Error(ErrorCode::InvalidDistanceMatrix, "non-zero diagonal " + at);
        if (v != (*this)(j, i))
          throw Error(ErrorCode::InvalidDistanceMatrix, "asymmetric entry " + at);
      }
    }
  }

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * n_ + j];
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * n_, n_};
  }

  const std::vector<double> &entries() const noexcept { return entries_; }

  /// Same matrix with every entry multiplied by a non-negative factor.
  DistanceMatrix scaled(double factor) const {
    std::vector<double> out = entries_;
    for (double &v : out)
      v *= factor;
    return DistanceMatrix(n_, std::move(out));
  }

  bool operator==(const DistanceMatrix &) const = default;

private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return sum;
}

inline DistanceMatrix distance_matrix(const FeatureCatalog &catalog,
                                      Metric metric = Metric::SquaredEuclidean) {
  const std::size_t n = catalog.size();
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = squared_distance(catalog[i].vector, catalog[j].vector);
      if (metric == Metric::Euclidean)
        d = std::sqrt(d);
      entries[i * n + j] = d;
      entries[j * n + i] = d;
    }
  }
  return DistanceMatrix(n, std::move(entries));
}

/// Distances between raw points, for generators that never build a catalog.
inline DistanceMatrix
distance_matrix(const std::vector<std::vector<double>> &points,
                Metric metric = Metric::SquaredEuclidean) {
  const std::size_t n = points.size();
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = squared_distance(points[i], points[j]);
      if (metric == Metric::Euclidean)
        d = std::sqrt(d);
      entries[i * n + j] = d;
      entries[j * n + i] = d;
    }
  }
  return DistanceMatrix(n, std::move(entries));
}

inline nlohmann::json to_json(const DistanceMatrix &d) {
  return {{"n", d.size()}, {"entries", d.entries()}};
}

/// Accepts {"n", "entries"} with entries flat row-major or nested rows.
inline DistanceMatrix distance_matrix_from_json(const nlohmann::json &doc) {
  if (!doc.is_object() || !doc.contains("n") ||
      !doc["n"].is_number_integer() || doc["n"].get<long long>() < 0 ||
      !doc.contains("entries") ||
      !doc["entries"].is_array())
    throw Error(ErrorCode::MalformedInput,
                "distances must be {\"n\": count, \"entries\": [...]}");
  const auto n = doc["n"].get<std::size_t>();
  std::vector<double> entries;
  for (const auto &item : doc["entries"]) {
    if (item.is_array()) {
      for (const auto &v : item) {
        if (!v.is_number())
          throw Error(ErrorCode::MalformedInput, "non-numeric distance entry");
        entries.push_back(v.get<double>());
      }
    } else if (item.is_number()) {
      entries.push_back(item.get<double>());
    } else {
      throw Error(ErrorCode::MalformedInput, "non-numeric distance entry");
    }
  }
  return DistanceMatrix(n, std::move(entries));
}

inline std::string to_csv(const DistanceMatrix &d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (j > 0)
        out += ',';
      out += detail::format_double(d(i, j));
    }
    out += '\n';
  }
  return out;
}

} // namespace stylemix

#endif // STYLEMIX_DISTANCE_MATRIX_HPP

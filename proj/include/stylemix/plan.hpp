#ifndef STYLEMIX_PLAN_HPP
#define STYLEMIX_PLAN_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "stylemix/instance.hpp"

namespace stylemix {

/// Dense row-major articles x stores table.
template <typename T> class Grid {
public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T &operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  const T &operator()(std::size_t r, std::size_t c) const {
    return cells_[r * cols_ + c];
  }

  const std::vector<T> &cells() const noexcept { return cells_; }

  std::vector<std::vector<T>> nested() const {
    std::vector<std::vector<T>> out(rows_, std::vector<T>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        out[r][c] = (*this)(r, c);
    return out;
  }

  bool operator==(const Grid &) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> cells_;
};

/// y_is indicators, articles x stores.
class AssignmentPattern {
public:
  AssignmentPattern() = default;
  AssignmentPattern(std::size_t articles, std::size_t stores)
      : y_(articles, stores, 0) {}

  std::size_t num_articles() const noexcept { return y_.rows(); }
  std::size_t num_stores() const noexcept { return y_.cols(); }

  bool assigned(std::size_t i, std::size_t s) const { return y_(i, s) != 0; }
  void set(std::size_t i, std::size_t s, bool on) { y_(i, s) = on ? 1 : 0; }

  std::size_t styles_at(std::size_t s) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < num_articles(); ++i)
      n += y_(i, s);
    return n;
  }

  std::vector<std::size_t> members(std::size_t s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < num_articles(); ++i)
      if (y_(i, s))
        out.push_back(i);
    return out;
  }

  /// Every store carries at least two styles.
  bool satisfies_min_styles() const {
    for (std::size_t s = 0; s < num_stores(); ++s)
      if (styles_at(s) < 2)
        return false;
    return true;
  }

  const Grid<std::uint8_t> &grid() const noexcept { return y_; }

  /// Lexicographic order of y read store by store (all articles of store 0,
  /// then store 1, ...), the tie-break order of the exact solver.
  bool lex_less(const AssignmentPattern &other) const {
    for (std::size_t s = 0; s < num_stores(); ++s)
      for (std::size_t i = 0; i < num_articles(); ++i)
        if (y_(i, s) != other.y_(i, s))
          return y_(i, s) < other.y_(i, s);
    return false;
  }

  bool operator==(const AssignmentPattern &) const = default;

private:
  Grid<std::uint8_t> y_;
};

struct DistributionPlan {
  Grid<Quantity> x;
  AssignmentPattern y;
  std::vector<double> per_store_variety;
  double objective = 0.0;

  bool operator==(const DistributionPlan &) const = default;
};

} // namespace stylemix

#endif // STYLEMIX_PLAN_HPP

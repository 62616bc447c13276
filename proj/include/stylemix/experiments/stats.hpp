#ifndef STYLEMIX_EXPERIMENTS_STATS_HPP
#define STYLEMIX_EXPERIMENTS_STATS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace stylemix::stats {

inline double mean(std::span<const double> v) {
  if (v.empty())
    return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
inline double stddev(std::span<const double> v) {
  if (v.size() < 2)
    return 0.0;
  const double mu = mean(v);
  double ss = 0.0;
  for (double x : v)
    ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

/// R^2 = 1 - SS_res / SS_tot; a constant response fitted exactly counts as 1.
inline double r_squared(std::span<const double> y, std::span<const double> fitted) {
  const double mu = mean(y);
  double ss_tot = 0.0;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    ss_tot += (y[k] - mu) * (y[k] - mu);
    ss_res += (y[k] - fitted[k]) * (y[k] - fitted[k]);
  }
  if (ss_tot == 0.0)
    return ss_res == 0.0 ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  LinearFit fit;
  fit.slope = sxx == 0.0 ? 0.0 : sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  std::vector<double> fitted(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    fitted[k] = fit.intercept + fit.slope * x[k];
  fit.r2 = r_squared(y, fitted);
  return fit;
}

struct QuadraticFit {
  std::array<double, 3> coef{}; ///< c0 + c1 x + c2 x^2
  double r2 = 0.0;
};

/// Least squares on (1, t, t^2) with t the centred abscissa, then mapped back.
inline QuadraticFit quadratic_fit(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x);
  std::array<std::array<double, 4>, 3> a{};
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = x[k] - mx;
    const std::array<double, 3> basis{1.0, t, t * t};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c)
        a[r][c] += basis[r] * basis[c];
      a[r][3] += basis[r] * y[k];
    }
  }
  std::array<double, 3> beta{};
  bool singular = false;
  for (int col = 0; col < 3 && !singular; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col]))
        pivot = r;
    if (std::abs(a[pivot][col]) < 1e-300) {
      singular = true;
      break;
    }
    std::swap(a[col], a[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col)
        continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 4; ++c)
        a[r][c] -= f * a[col][c];
    }
  }
  QuadraticFit fit;
  if (singular) {
    const auto lin = linear_fit(x, y);
    fit.coef = {lin.intercept, lin.slope, 0.0};
    fit.r2 = lin.r2;
    return fit;
  }
  for (int r = 0; r < 3; ++r)
    beta[r] = a[r][3] / a[r][r];
  // c0 + c1 (x - mx) + c2 (x - mx)^2 expanded in x
  fit.coef = {beta[0] - beta[1] * mx + beta[2] * mx * mx, beta[1] - 2.0 * beta[2] * mx,
              beta[2]};
  std::vector<double> fitted(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = x[k] - mx;
    fitted[k] = beta[0] + beta[1] * t + beta[2] * t * t;
  }
  fit.r2 = r_squared(y, fitted);
  return fit;
}

/// Ranks starting at 1, ties sharing their average rank.
inline std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> out(v.size());
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start;
    while (end + 1 < order.size() && v[order[end + 1]] == v[order[start]])
      ++end;
    const double avg = 0.5 * static_cast<double>(start + end) + 1.0;
    for (std::size_t k = start; k <= end; ++k)
      out[order[k]] = avg;
    start = end + 1;
  }
  return out;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

/// Spearman rank correlation; 0 when either side is constant.
inline double spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  return pearson(rx, ry);
}

} // namespace stylemix::stats

#endif // STYLEMIX_EXPERIMENTS_STATS_HPP

#ifndef STYLEMIX_TESTS_FIXTURES_HPP
#define STYLEMIX_TESTS_FIXTURES_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "stylemix/stylemix.hpp"

namespace stylemix::testing {

inline DistributionInstance make_instance(std::vector<Quantity> planned,
                                          std::vector<Quantity> minimum,
                                          std::vector<Quantity> desired, double alpha,
                                          DistanceMatrix d,
                                          BigMPolicy policy = BigMPolicy::PaperQs) {
  DistributionInstance inst;
  for (std::size_t i = 0; i < planned.size(); ++i)
    inst.articles.push_back({"a" + std::to_string(i + 1), planned[i], minimum[i]});
  for (std::size_t s = 0; s < desired.size(); ++s)
    inst.stores.push_back({"s" + std::to_string(s + 1), desired[s]});
  inst.alpha = alpha;
  inst.big_m_policy = policy;
  inst.distances = std::move(d);
  return inst;
}

/// Four styles on a line at 0, 1, 2, 3 with squared distances, two stores
/// that must each take exactly two styles of four units.
inline DistributionInstance line_of_four() {
  const auto d = distance_matrix(std::vector<std::vector<double>>{{0.0}, {1.0}, {2.0}, {3.0}},
                                 Metric::SquaredEuclidean);
  return make_instance({4, 4, 4, 4}, {4, 4, 4, 4}, {8, 8}, 0.0, d);
}

inline DistanceMatrix unit_triangle() {
  const double h = std::sqrt(3.0) / 2.0;
  return distance_matrix(std::vector<std::vector<double>>{{0.0, 0.0}, {1.0, 0.0}, {0.5, h}},
                         Metric::Euclidean);
}

inline DistanceMatrix random_matrix(std::size_t n, std::size_t dim, Metric metric, Rng &rng) {
  return distance_matrix(uniform_points(n, dim, rng), metric);
}

/// Random oracle-scale instance: up to `max_articles` x `max_stores`, small
/// integer quantities, squared-Euclidean distances between random points.
inline DistributionInstance random_instance(std::uint64_t seed, std::size_t max_articles = 8,
                                            std::size_t max_stores = 3) {
  Rng rng(stream_seed({seed, 0x696e7374ULL}));
  const auto n = static_cast<std::size_t>(rng.uniform_int(3, static_cast<std::int64_t>(max_articles)));
  const auto m = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_stores)));
  const auto dim = static_cast<std::size_t>(rng.uniform_int(2, 6));
  std::vector<Quantity> planned, minimum, desired;
  for (std::size_t i = 0; i < n; ++i) {
    const Quantity lo = rng.uniform_int(1, 3);
    minimum.push_back(lo);
    planned.push_back(lo * rng.uniform_int(1, 3) + rng.uniform_int(0, 2));
  }
  for (std::size_t s = 0; s < m; ++s)
    desired.push_back(rng.uniform_int(4, 14));
  const double alphas[] = {0.0, 0.1, 0.2, 0.3};
  const double alpha = alphas[rng.below(4)];
  auto d = random_matrix(n, dim, Metric::SquaredEuclidean, rng);
  return make_instance(planned, minimum, desired, alpha, std::move(d),
                       rng.below(2) ? BigMPolicy::PaperQs : BigMPolicy::TolerantQs);
}

/// Random instance for which the exact solver finds a feasible plan.
inline DistributionInstance random_feasible_instance(std::uint64_t seed,
                                                     std::size_t max_articles = 8,
                                                     std::size_t max_stores = 3) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto inst = random_instance(stream_seed({seed, attempt}), max_articles, max_stores);
    try {
      solve_exact(inst);
      return inst;
    } catch (const Error &e) {
      if (e.code() != ErrorCode::Infeasible)
        throw;
    }
  }
}

/// Micro instance for exhaustive quantity search: <= 4 x 3, quantities <= 6.
inline DistributionInstance micro_instance(std::uint64_t seed) {
  Rng rng(stream_seed({seed, 0x6d6963ULL}));
  const auto n = static_cast<std::size_t>(rng.uniform_int(2, 4));
  const auto m = static_cast<std::size_t>(rng.uniform_int(1, 3));
  std::vector<Quantity> planned, minimum, desired;
  for (std::size_t i = 0; i < n; ++i) {
    const Quantity lo = rng.uniform_int(1, 3);
    minimum.push_back(lo);
    planned.push_back(rng.uniform_int(lo, 6));
  }
  for (std::size_t s = 0; s < m; ++s)
    desired.push_back(rng.uniform_int(2, 6));
  const double alphas[] = {0.0, 0.2, 0.5};
  auto d = random_matrix(n, 2, Metric::Euclidean, rng);
  return make_instance(planned, minimum, desired, alphas[rng.below(3)], std::move(d),
                       rng.below(2) ? BigMPolicy::PaperQs : BigMPolicy::TolerantQs);
}

/// Random pattern with every store holding at least two styles.
inline AssignmentPattern random_pattern(std::size_t n, std::size_t m, Rng &rng) {
  AssignmentPattern y(n, m);
  for (std::size_t s = 0; s < m; ++s) {
    const auto a = static_cast<std::size_t>(rng.below(n));
    auto b = static_cast<std::size_t>(rng.below(n - 1));
    if (b >= a)
      ++b;
    y.set(a, s, true);
    y.set(b, s, true);
    for (std::size_t i = 0; i < n; ++i)
      if (rng.below(3) == 0)
        y.set(i, s, true);
  }
  return y;
}

} // namespace stylemix::testing

#endif // STYLEMIX_TESTS_FIXTURES_HPP

#ifndef STYLEMIX_EXPERIMENTS_SYNTHETIC_HPP
#define STYLEMIX_EXPERIMENTS_SYNTHETIC_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stylemix/catalog.hpp"
#include "stylemix/distance_matrix.hpp"
#include "stylemix/instance.hpp"
#include "stylemix/rng.hpp"

namespace stylemix {

/// Points drawn uniformly from the unit hypercube [0, 1]^dim.
inline std::vector<std::vector<double>> uniform_points(std::size_t count, std::size_t dim,
                                                       Rng &rng) {
  std::vector<std::vector<double>> points(count, std::vector<double>(dim));
  for (auto &p : points)
    for (double &v : p)
      v = rng.uniform01();
  return points;
}

inline FeatureCatalog synthetic_catalog(std::size_t count, std::size_t dim,
                                        std::uint64_t seed, const std::string &prefix = "style") {
  Rng rng(stream_seed({seed, 0x636174ULL}));
  auto points = uniform_points(count, dim, rng);
  std::vector<StyleRecord> styles;
  for (std::size_t i = 0; i < count; ++i)
    styles.push_back({prefix + std::to_string(i + 1), std::move(points[i])});
  return FeatureCatalog(std::move(styles));
}

/**
 * Eight shirts in four look-alike pairs (pair members sit within a small
 * jitter of a shared centre) for six stores with desired quantities
 * 30, 26, 22, 18, 14, 10; every article has 16 units planned and a minimum
 * drop of 4; alpha = 0.2.
 */
inline FeatureCatalog paired_catalog(std::uint64_t seed, std::size_t dim = 8) {
  Rng rng(stream_seed({seed, 0x70616972ULL}));
  const auto centres = uniform_points(4, dim, rng);
  std::vector<StyleRecord> styles;
  for (std::size_t g = 0; g < 4; ++g) {
    for (std::size_t twin = 0; twin < 2; ++twin) {
      std::vector<double> v = centres[g];
      for (double &c : v)
        c += 0.05 * (rng.uniform01() - 0.5);
      styles.push_back({"shirt" + std::to_string(2 * g + twin + 1), std::move(v)});
    }
  }
  return FeatureCatalog(std::move(styles));
}

inline DistributionInstance paired_instance(std::uint64_t seed,
                                            Metric metric = Metric::SquaredEuclidean) {
  DistributionInstance inst;
  const auto catalog = paired_catalog(seed);
  for (const auto &style : catalog.styles())
    inst.articles.push_back({style.id, 16, 4});
  const Quantity desired[] = {30, 26, 22, 18, 14, 10};
  for (std::size_t s = 0; s < 6; ++s)
    inst.stores.push_back({"store" + std::to_string(s + 1), desired[s]});
  inst.alpha = 0.2;
  inst.big_m_policy = BigMPolicy::PaperQs;
  inst.distances = distance_matrix(catalog, metric);
  return inst;
}

} // namespace stylemix

#endif // STYLEMIX_EXPERIMENTS_SYNTHETIC_HPP

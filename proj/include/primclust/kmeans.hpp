#ifndef PRIMCLUST_KMEANS_HPP
#define PRIMCLUST_KMEANS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "primclust/dataset.hpp"
#include "primclust/metrics.hpp"
#include "primclust/mode_extract.hpp"

namespace primclust {

struct ClusterModel {
  std::size_t k = 0;
  std::vector<int> labels;                       // 0..k-1
  std::vector<std::vector<double>> centroids;
  double objective = 0.0;  // sum of d(v, centroid); squared for euclidean
  std::size_t iterations = 0;
  bool converged = false;
};

// Generalized Lloyd refinement from seed clusters.  Assignment uses the
// pipeline metric (ties to the lowest cluster index); the update step is the
// centroid() mean, empty clusters re-seed at the vertex farthest from its
// centroid.  tol < 0 selects 1e-8 x initial objective.
ClusterModel lloyd(const Dataset& d, const SeedClusters& init, const MetricKind& m,
                   std::size_t max_iter = 100, double tol = -1.0);

// K distinct vertices drawn uniformly as singleton seed clusters.
SeedClusters random_init(const Dataset& d, std::size_t k, std::uint64_t seed);

}  // namespace primclust

#endif

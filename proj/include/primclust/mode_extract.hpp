#ifndef PRIMCLUST_MODE_EXTRACT_HPP
#define PRIMCLUST_MODE_EXTRACT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "primclust/dataset.hpp"
#include "primclust/metrics.hpp"
#include "primclust/poisson.hpp"
#include "primclust/prim.hpp"

namespace primclust {

struct SeedClusters {
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> members;  // pairwise disjoint
  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> noise;                 // vertices in no cluster
  double epsilon_used = 0.0;
  std::size_t k0_used = 1;
};

// Component-wise mean of the member vectors; divergence metrics average the
// normalized vectors instead (the mean of probability vectors is one).
std::vector<double> centroid(const std::vector<std::size_t>& members, const Dataset& d,
                             const MetricKind& m);

// Maximal runs of consecutive sub-epsilon connections become clusters when
// they span at least k0 edges; each run also claims the parent vertex that
// opened it (if still unassigned).  Everything else is noise.
SeedClusters extract(const PrimDescriptor& desc, const DetectionParams& params,
                     const Dataset& d, const MetricKind& m);

void write_seed_json(const SeedClusters& s, const std::string& path);

}  // namespace primclust

#endif

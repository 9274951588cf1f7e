#ifndef PRIMCLUST_VALIDITY_HPP
#define PRIMCLUST_VALIDITY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "primclust/dataset.hpp"
#include "primclust/kmeans.hpp"
#include "primclust/metrics.hpp"

namespace primclust {

struct ValidityReport {
  double db_index = -1.0;                       // -1 when not computed (K < 2)
  std::vector<std::vector<std::size_t>> confusion;  // clusters x reference classes
  double score = 0.0;
  std::vector<double> per_class_scores;
};

// Davies-Bouldin: mean over clusters of the worst (s_i+s_j)/d(mu_i,mu_j).
// Uses the pipeline metric for both scatter and centroid separation.
double davies_bouldin(const Dataset& d, const ClusterModel& model, const MetricKind& m);

// Each cluster maps to the reference class with the largest overlap; the
// score is the covered fraction of all points.  Label -1 counts as
// unassigned (never correct).  Clusters may share a best class.
ValidityReport overlap_score(const std::vector<int>& labels,
                             const std::vector<int>& reference);

void write_validity_json(const ValidityReport& r, const std::string& path);
void write_confusion_csv(const ValidityReport& r, const std::string& path);

}  // namespace primclust

#endif

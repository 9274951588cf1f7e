#ifndef PRIMCLUST_PRIM_HPP
#define PRIMCLUST_PRIM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "primclust/metrics.hpp"

namespace primclust {

struct PrimStep {
  std::size_t iteration;  // 1-based, N-1 steps total
  std::size_t vertex;     // vertex connected at this step
  std::size_t parent;     // tree vertex it was attached to
  double length;          // g(i)
};

// Construction record of an MST: the trajectory g is the length column.
struct PrimDescriptor {
  std::vector<PrimStep> steps;
  std::size_t root = 0;
};

struct MstSummary {
  double total_length = 0.0;               // gamma = 1 power sum
  std::vector<double> edge_lengths;        // sorted ascending
};

// Dense Prim over a symmetric zero-diagonal matrix.  Ties are broken by the
// smallest unconnected vertex index, then the smallest parent index, so the
// descriptor is reproducible.
PrimDescriptor prim(const DissimilarityMatrix& m, std::size_t root = 0);

// Edge lengths in connection order.
std::vector<double> trajectory(const PrimDescriptor& d);

MstSummary summarize(const PrimDescriptor& d);

// CSV: iteration,vertex,parent,length
void write_trajectory_csv(const PrimDescriptor& d, const std::string& path);

}  // namespace primclust

#endif

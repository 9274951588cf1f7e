#ifndef PRIMCLUST_NN_INDEX_HPP
#define PRIMCLUST_NN_INDEX_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "primclust/dataset.hpp"
#include "primclust/metrics.hpp"
#include "primclust/prim.hpp"

namespace primclust {

struct IndexParams {
  double epsilon_conf = 0.05;      // mass-outside tolerance of the median stopping rule
  std::size_t sample_size = 4096;  // R: median is sampled above this cell size
  std::size_t leaf_occupancy = 32; // M: cells at or below this size stop splitting
  std::uint64_t seed = 0;
};

// One row of the descriptor table.
struct SpatialIndexNode {
  std::vector<double> output;      // per-dimension mean of contained points
  int status = 1;                  // 0 = split, 1 = terminal, 10 = empty or too small
  int parent = -1;
  std::array<int, 2> child{-1, -1};
  int depth = 0;
  std::size_t card = 0;
  int split_axis = -1;             // -1 for leaves
  double split_threshold = 0.0;    // sample median along split_axis
  std::vector<double> lower, upper;  // cell bounds [alpha_j, beta_j]
};

// Smallest cell size for which the sample median is reliable:
// ceil(2 [erf^-1((1-eps)^(1/L))]^2), at least 1.
std::size_t min_leaf_size(std::size_t dim, double epsilon_conf);

double erf_inv(double y);

// Recursive median-split tree.  Leaves partition the data; adjacency is
// derived from stored bounds so lookups cover the cell plus its touching
// neighbors (up to 3^L in a regular layout).
class SpatialIndex {
 public:
  const std::vector<SpatialIndexNode>& nodes() const { return nodes_; }
  std::size_t leaf_count() const { return leaf_ids_.size(); }
  const std::vector<int>& leaf_ids() const { return leaf_ids_; }
  int leaf_of(std::size_t point) const { return point_leaf_[point]; }
  const std::vector<std::size_t>& points_in(int node_id) const {
    return node_points_[static_cast<std::size_t>(node_id)];
  }
  const std::vector<int>& adjacent_leaves(int leaf_id) const;

  // all points sharing the query point's cell or any adjacent cell, query excluded
  std::vector<std::size_t> candidate_neighbors(std::size_t point) const;

  void write_csv(const std::string& path) const;

  friend SpatialIndex build_index(const Dataset& d, const IndexParams& p);

 private:
  std::vector<SpatialIndexNode> nodes_;
  std::vector<std::vector<std::size_t>> node_points_;  // leaf rows only are kept
  std::vector<int> point_leaf_;
  std::vector<int> leaf_ids_;
  std::vector<std::vector<int>> leaf_adjacency_;  // parallel to leaf_ids_
  std::vector<int> leaf_rank_;                    // node id -> position in leaf_ids_
};

SpatialIndex build_index(const Dataset& d, const IndexParams& p);

struct NnMstResult {
  PrimDescriptor descriptor;
  std::size_t distance_evaluations = 0;
  std::size_t candidate_edges = 0;
  std::size_t reconnect_edges = 0;
};

struct CandidateEdge {
  std::size_t u, v;
  double w;
};

// Joins the connected components of a candidate edge set until one remains:
// each round picks the two components whose representative points (the point
// of a component nearest to its mean) are closest and adds that exact edge.
// Returns the number of edges added; eval_counter tracks metric evaluations.
std::size_t repair_connectivity(const Dataset& d, const MetricKind& m,
                                std::vector<CandidateEdge>& edges,
                                std::size_t& eval_counter);

// Spanning tree over candidate edges only (own cell + adjacent cells), with
// exact minimum representative edges joining any leftover components; the
// trajectory is recorded exactly as in prim().
NnMstResult nn_mst(const Dataset& d, const MetricKind& m, const IndexParams& p,
                   std::size_t root = 0);

}  // namespace primclust

#endif

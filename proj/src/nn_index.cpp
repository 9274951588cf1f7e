#include "primclust/nn_index.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <numeric>

#include "primclust/errors.hpp"
#include "primclust/rng.hpp"

namespace primclust {

double erf_inv(double y) {
  if (!(y > -1.0 && y < 1.0)) throw ContractError("erf_inv: argument must lie in (-1,1)");
  if (y == 0.0) return 0.0;
  // Winitzki's approximation as the seed, then Newton on std::erf.
  const double a = 0.147;
  double ln1my2 = std::log1p(-y * y);
  double t = 2.0 / (M_PI * a) + ln1my2 / 2.0;
  double x = std::copysign(std::sqrt(std::sqrt(t * t - ln1my2 / a) - t), y);
  for (int it = 0; it < 6; ++it) {
    double err = std::erf(x) - y;
    if (err == 0.0) break;
    x -= err * std::sqrt(M_PI) / 2.0 * std::exp(x * x);
  }
  return x;
}

std::size_t min_leaf_size(std::size_t dim, double epsilon_conf) {
  if (dim == 0) throw ContractError("min_leaf_size: dimension must be >= 1");
  if (!(epsilon_conf > 0.0 && epsilon_conf < 1.0))
    throw ContractError("min_leaf_size: epsilon must lie in (0,1)");
  double q = std::pow(1.0 - epsilon_conf, 1.0 / static_cast<double>(dim));
  double rhs = 2.0 * std::pow(erf_inv(q), 2.0);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(rhs)));
}

namespace {

// lower median of the values at the given point indices along one axis;
// sampled when the cell exceeds the sample budget
double cell_median(const Dataset& d, const std::vector<std::size_t>& pts,
                   std::size_t axis, std::size_t sample_size, Rng& rng) {
  std::vector<double> vals;
  if (pts.size() > sample_size && sample_size > 0) {
    vals.reserve(sample_size);
    for (std::size_t i = 0; i < sample_size; ++i)
      vals.push_back(d.row(pts[rng.index(pts.size())])[axis]);
  } else {
    vals.reserve(pts.size());
    for (std::size_t p : pts) vals.push_back(d.row(p)[axis]);
  }
  std::size_t mid = (vals.size() - 1) / 2;
  std::nth_element(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(mid), vals.end());
  return vals[mid];
}

}  // namespace

const std::vector<int>& SpatialIndex::adjacent_leaves(int leaf_id) const {
  return leaf_adjacency_[static_cast<std::size_t>(leaf_rank_[static_cast<std::size_t>(leaf_id)])];
}

std::vector<std::size_t> SpatialIndex::candidate_neighbors(std::size_t point) const {
  int leaf = point_leaf_[point];
  std::vector<std::size_t> out;
  for (int nb : adjacent_leaves(leaf))
    for (std::size_t p : points_in(nb))
      if (p != point) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

void SpatialIndex::write_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write '" + path + "'");
  f << "node,output,status,parent,child1,child2,depth,card\n";
  f.precision(17);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    f << i << ",\"";
    for (std::size_t j = 0; j < n.output.size(); ++j)
      f << (j ? ";" : "") << n.output[j];
    f << "\"," << n.status << ',' << n.parent << ',' << n.child[0] << ','
      << n.child[1] << ',' << n.depth << ',' << n.card << '\n';
  }
}

SpatialIndex build_index(const Dataset& d, const IndexParams& p) {
  if (p.leaf_occupancy < 2) throw ContractError("build_index: leaf occupancy M must be >= 2");
  const std::size_t n = d.size();
  const std::size_t dim = d.dim();
  const std::size_t min_leaf = min_leaf_size(dim, p.epsilon_conf);
  Rng rng(p.seed);

  SpatialIndex idx;
  idx.point_leaf_.assign(n, -1);

  // root bounds = data bounding box
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    auto r = d.row(i);
    for (std::size_t j = 0; j < dim; ++j) {
      lo[j] = std::min(lo[j], r[j]);
      hi[j] = std::max(hi[j], r[j]);
    }
  }

  auto make_node = [&](std::vector<std::size_t>&& pts, int parent, int depth,
                       std::vector<double> lower, std::vector<double> upper) {
    SpatialIndexNode node;
    node.parent = parent;
    node.depth = depth;
    node.card = pts.size();
    node.lower = std::move(lower);
    node.upper = std::move(upper);
    node.output.assign(dim, 0.0);
    for (std::size_t pt : pts) {
      auto r = d.row(pt);
      for (std::size_t j = 0; j < dim; ++j) node.output[j] += r[j];
    }
    if (!pts.empty())
      for (std::size_t j = 0; j < dim; ++j)
        node.output[j] /= static_cast<double>(pts.size());
    idx.nodes_.push_back(std::move(node));
    idx.node_points_.push_back(std::move(pts));
    return static_cast<int>(idx.nodes_.size() - 1);
  };

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  int root = make_node(std::move(all), -1, 0, lo, hi);

  // grow level by level while splittable cells remain
  std::deque<int> frontier{root};
  while (!frontier.empty()) {
    int id = frontier.front();
    frontier.pop_front();
    auto& pts = idx.node_points_[static_cast<std::size_t>(id)];
    const std::size_t card = pts.size();

    // largest-spread axis within the cell
    std::size_t axis = 0;
    double best_spread = -1.0;
    std::vector<double> cmin(dim, std::numeric_limits<double>::infinity());
    std::vector<double> cmax(dim, -std::numeric_limits<double>::infinity());
    for (std::size_t pt : pts) {
      auto r = d.row(pt);
      for (std::size_t j = 0; j < dim; ++j) {
        cmin[j] = std::min(cmin[j], r[j]);
        cmax[j] = std::max(cmax[j], r[j]);
      }
    }
    for (std::size_t j = 0; j < dim; ++j) {
      double spread = card ? cmax[j] - cmin[j] : 0.0;
      if (spread > best_spread) {
        best_spread = spread;
        axis = j;
      }
    }

    const bool splittable =
        card > p.leaf_occupancy && card >= min_leaf && best_spread > 0.0;
    if (!splittable) {
      auto& node = idx.nodes_[static_cast<std::size_t>(id)];
      node.status = (card == 0 || card < min_leaf) ? 10 : 1;
      for (std::size_t pt : pts) idx.point_leaf_[pt] = id;
      continue;
    }

    double thr = cell_median(d, pts, axis, p.sample_size, rng);
    // keep both sides nonempty: <= goes left unless the median hit the max
    const bool strict = thr >= cmax[axis];
    std::vector<std::size_t> left_pts, right_pts;
    for (std::size_t pt : pts) {
      double v = d.row(pt)[axis];
      bool go_left = strict ? (v < thr) : (v <= thr);
      (go_left ? left_pts : right_pts).push_back(pt);
    }
    if (left_pts.empty() || right_pts.empty()) {
      // sampled median missed the spread; degrade to a terminal cell
      auto& node = idx.nodes_[static_cast<std::size_t>(id)];
      node.status = 1;
      for (std::size_t pt : pts) idx.point_leaf_[pt] = id;
      continue;
    }

    const auto bounds_lo = idx.nodes_[static_cast<std::size_t>(id)].lower;
    const auto bounds_hi = idx.nodes_[static_cast<std::size_t>(id)].upper;
    const int depth = idx.nodes_[static_cast<std::size_t>(id)].depth;
    auto left_hi = bounds_hi;
    left_hi[axis] = thr;
    auto right_lo = bounds_lo;
    right_lo[axis] = thr;
    int left = make_node(std::move(left_pts), id, depth + 1, bounds_lo, left_hi);
    int right = make_node(std::move(right_pts), id, depth + 1, right_lo, bounds_hi);
    auto& node = idx.nodes_[static_cast<std::size_t>(id)];
    node.status = 0;
    node.split_axis = static_cast<int>(axis);
    node.split_threshold = thr;
    node.child = {left, right};
    idx.node_points_[static_cast<std::size_t>(id)].clear();
    frontier.push_back(left);
    frontier.push_back(right);
  }

  for (std::size_t i = 0; i < idx.nodes_.size(); ++i)
    if (idx.nodes_[i].status != 0) idx.leaf_ids_.push_back(static_cast<int>(i));

  // bounds-touch adjacency between leaves (includes the leaf itself)
  idx.leaf_rank_.assign(idx.nodes_.size(), -1);
  for (std::size_t r = 0; r < idx.leaf_ids_.size(); ++r)
    idx.leaf_rank_[static_cast<std::size_t>(idx.leaf_ids_[r])] = static_cast<int>(r);
  idx.leaf_adjacency_.resize(idx.leaf_ids_.size());
  auto touches = [&](const SpatialIndexNode& a, const SpatialIndexNode& b) {
    for (std::size_t j = 0; j < dim; ++j) {
      double tol = 1e-12 * std::max(1.0, std::max(std::abs(a.upper[j]), std::abs(b.upper[j])));
      if (a.lower[j] > b.upper[j] + tol || b.lower[j] > a.upper[j] + tol) return false;
    }
    return true;
  };
  for (std::size_t ra = 0; ra < idx.leaf_ids_.size(); ++ra) {
    const auto& a = idx.nodes_[static_cast<std::size_t>(idx.leaf_ids_[ra])];
    for (std::size_t rb = ra; rb < idx.leaf_ids_.size(); ++rb) {
      const auto& b = idx.nodes_[static_cast<std::size_t>(idx.leaf_ids_[rb])];
      if (touches(a, b)) {
        idx.leaf_adjacency_[ra].push_back(idx.leaf_ids_[rb]);
        if (rb != ra) idx.leaf_adjacency_[rb].push_back(idx.leaf_ids_[ra]);
      }
    }
  }
  return idx;
}

namespace {

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::size_t repair_connectivity(const Dataset& d, const MetricKind& m,
                                std::vector<CandidateEdge>& edges,
                                std::size_t& eval_counter) {
  const std::size_t n = d.size();
  const std::size_t dim = d.dim();
  DisjointSet ds(n);
  for (const auto& e : edges) ds.unite(e.u, e.v);
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i)
    if (ds.find(i) == i) roots.push_back(i);

  std::size_t added = 0;
  while (roots.size() > 1) {
    std::vector<std::size_t> rep(roots.size());
    for (std::size_t c = 0; c < roots.size(); ++c) {
      std::vector<double> mean(dim, 0.0);
      std::size_t count = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (ds.find(i) != roots[c]) continue;
        auto r = d.row(i);
        for (std::size_t j = 0; j < dim; ++j) mean[j] += r[j];
        ++count;
      }
      for (std::size_t j = 0; j < dim; ++j) mean[j] /= static_cast<double>(count);
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_pt = roots[c];
      for (std::size_t i = 0; i < n; ++i) {
        if (ds.find(i) != roots[c]) continue;
        ++eval_counter;
        double w = distance(d.row(i), mean, m);
        if (w < best) {
          best = w;
          best_pt = i;
        }
      }
      rep[c] = best_pt;
    }
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    for (std::size_t a = 0; a < roots.size(); ++a)
      for (std::size_t b = a + 1; b < roots.size(); ++b) {
        ++eval_counter;
        double w = distance(d.row(rep[a]), d.row(rep[b]), m);
        if (w < best) {
          best = w;
          bi = a;
          bj = b;
        }
      }
    edges.push_back({rep[bi], rep[bj], best});
    ++added;
    ds.unite(roots[bi], roots[bj]);
    roots.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (ds.find(i) == i) roots.push_back(i);
  }
  return added;
}

NnMstResult nn_mst(const Dataset& d, const MetricKind& m, const IndexParams& p,
                   std::size_t root) {
  const std::size_t n = d.size();
  if (n < 2) throw ContractError("nn_mst: need at least 2 points");
  if (root >= n) throw ContractError("nn_mst: root out of range");

  SpatialIndex idx = build_index(d, p);
  NnMstResult res;

  std::vector<CandidateEdge> edges;
  auto eval = [&](std::size_t a, std::size_t b) {
    ++res.distance_evaluations;
    return distance(d.row(a), d.row(b), m);
  };

  // candidate pairs: within each leaf and across adjacent leaf pairs
  for (std::size_t ra = 0; ra < idx.leaf_ids().size(); ++ra) {
    int la = idx.leaf_ids()[ra];
    const auto& pa = idx.points_in(la);
    for (std::size_t i = 0; i < pa.size(); ++i)
      for (std::size_t j = i + 1; j < pa.size(); ++j)
        edges.push_back({pa[i], pa[j], eval(pa[i], pa[j])});
    for (int lb : idx.adjacent_leaves(la)) {
      if (lb <= la) continue;  // each unordered leaf pair once
      const auto& pb = idx.points_in(lb);
      for (std::size_t a : pa)
        for (std::size_t b : pb) edges.push_back({a, b, eval(a, b)});
    }
  }
  res.candidate_edges = edges.size();
  res.reconnect_edges = repair_connectivity(d, m, edges, res.distance_evaluations);

  // sparse Prim with the dense tie rule (smallest vertex, then smallest parent)
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<bool> connected(n, false);
  std::vector<double> best(n, kInf);
  std::vector<std::size_t> best_parent(n, root);
  auto relax = [&](std::size_t u) {
    for (auto [v, w] : adj[u]) {
      if (connected[v]) continue;
      if (w < best[v] || (w == best[v] && u < best_parent[v])) {
        best[v] = w;
        best_parent[v] = u;
      }
    }
  };
  connected[root] = true;
  relax(root);
  res.descriptor.root = root;
  res.descriptor.steps.reserve(n - 1);
  for (std::size_t it = 1; it < n; ++it) {
    std::size_t pick = n;
    double pick_len = kInf;
    for (std::size_t v = 0; v < n; ++v) {
      if (connected[v]) continue;
      if (best[v] < pick_len) {
        pick_len = best[v];
        pick = v;
      }
    }
    if (pick == n)
      throw ContractError("nn_mst: candidate graph is disconnected after repair");
    res.descriptor.steps.push_back({it, pick, best_parent[pick], pick_len});
    connected[pick] = true;
    relax(pick);
  }
  return res;
}

}  // namespace primclust

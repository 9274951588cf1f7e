#include "primclust/prim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "primclust/errors.hpp"

namespace primclust {

PrimDescriptor prim(const DissimilarityMatrix& m, std::size_t root) {
  const std::size_t n = m.size();
  if (n < 2) throw ContractError("prim: need at least 2 vertices");
  if (root >= n) throw ContractError("prim: root out of range");
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) != 0.0) throw ContractError("prim: nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!std::isfinite(m(i, j)))
        throw ContractError("prim: non-finite entry at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
      if (m(i, j) != m(j, i))
        throw ContractError("prim: matrix not symmetric at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
    }
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<bool> connected(n, false);
  std::vector<double> best(n, kInf);
  std::vector<std::size_t> best_parent(n, root);
  connected[root] = true;
  auto relax = [&](std::size_t u) {
    auto row = m.row(u);
    for (std::size_t v = 0; v < n; ++v) {
      if (connected[v]) continue;
      if (row[v] < best[v] || (row[v] == best[v] && u < best_parent[v])) {
        best[v] = row[v];
        best_parent[v] = u;
      }
    }
  };
  relax(root);

  PrimDescriptor out;
  out.root = root;
  out.steps.reserve(n - 1);
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
    out.steps.push_back({it, pick, best_parent[pick], pick_len});
    connected[pick] = true;
    relax(pick);
  }
  return out;
}

std::vector<double> trajectory(const PrimDescriptor& d) {
  std::vector<double> g;
  g.reserve(d.steps.size());
  for (const auto& s : d.steps) g.push_back(s.length);
  return g;
}

MstSummary summarize(const PrimDescriptor& d) {
  MstSummary s;
  s.edge_lengths = trajectory(d);
  std::sort(s.edge_lengths.begin(), s.edge_lengths.end());
  for (double e : s.edge_lengths) s.total_length += e;
  return s;
}

void write_trajectory_csv(const PrimDescriptor& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "iteration,vertex,parent,length\n";
  out.precision(17);
  for (const auto& s : d.steps)
    out << s.iteration << ',' << s.vertex << ',' << s.parent << ',' << s.length << '\n';
}

}  // namespace primclust

#include "primclust/mode_extract.hpp"

#include <fstream>

#include <json.hpp>

#include "primclust/errors.hpp"

namespace primclust {

std::vector<double> centroid(const std::vector<std::size_t>& members, const Dataset& d,
                             const MetricKind& m) {
  if (members.empty()) throw ContractError("centroid: empty member set");
  std::vector<double> mean(d.dim(), 0.0);
  for (std::size_t idx : members) {
    if (m.is_divergence()) {
      auto p = normalize(d.row(idx), idx);
      for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += p[j];
    } else {
      auto r = d.row(idx);
      for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += r[j];
    }
  }
  for (double& v : mean) v /= static_cast<double>(members.size());
  return mean;
}

SeedClusters extract(const PrimDescriptor& desc, const DetectionParams& params,
                     const Dataset& d, const MetricKind& m) {
  if (params.k0 < 1) throw ContractError("extract: k0 must be >= 1");
  if (!(params.epsilon > 0.0))
    throw DegenerateError("extract: threshold is degenerate (0); supply epsilon explicitly");
  const std::size_t n = d.size();
  if (desc.steps.size() + 1 != n)
    throw ContractError("extract: descriptor does not span the dataset");

  SeedClusters out;
  out.epsilon_used = params.epsilon;
  out.k0_used = params.k0;
  std::vector<bool> assigned(n, false);

  const auto& steps = desc.steps;
  std::size_t i = 0;
  while (i < steps.size()) {
    if (steps[i].length > params.epsilon) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < steps.size() && steps[j].length <= params.epsilon) ++j;
    const std::size_t run_edges = j - i;

    std::vector<std::size_t> members;
    members.reserve(run_edges + 1);
    std::size_t opener = steps[i].parent;
    if (!assigned[opener]) members.push_back(opener);
    for (std::size_t s = i; s < j; ++s) members.push_back(steps[s].vertex);

    // a run of k0 edges yields k0+1 vertices; if the opening parent already
    // belongs to an earlier cluster the run must reach that size on its own
    if (run_edges >= params.k0 && members.size() >= params.k0 + 1) {
      for (std::size_t v : members) assigned[v] = true;
      out.members.push_back(std::move(members));
    }
    i = j;
  }

  out.k = out.members.size();
  for (const auto& mem : out.members) out.centroids.push_back(centroid(mem, d, m));
  for (std::size_t v = 0; v < n; ++v)
    if (!assigned[v]) out.noise.push_back(v);
  return out;
}

void write_seed_json(const SeedClusters& s, const std::string& path) {
  nlohmann::json j;
  j["k"] = s.k;
  j["epsilon"] = s.epsilon_used;
  j["k0"] = s.k0_used;
  j["noise_count"] = s.noise.size();
  std::vector<std::size_t> sizes;
  for (const auto& m : s.members) sizes.push_back(m.size());
  j["sizes"] = sizes;
  j["centroids"] = s.centroids;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace primclust

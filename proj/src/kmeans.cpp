#include "primclust/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "primclust/errors.hpp"
#include "primclust/rng.hpp"

namespace primclust {

namespace {

// assignment / objective measure: squared distance for euclidean (classic
// Lloyd), the metric value itself for sam and the divergences
double cost(std::span<const double> x, const std::vector<double>& c, const MetricKind& m) {
  double v = distance(x, {c.data(), c.size()}, m);
  return m.tag == MetricTag::euclidean ? v * v : v;
}

std::vector<int> assign_all(const Dataset& d, const std::vector<std::vector<double>>& cent,
                            const MetricKind& m) {
  std::vector<int> labels(d.size(), 0);
  for (std::size_t v = 0; v < d.size(); ++v) {
    double best = std::numeric_limits<double>::infinity();
    int best_j = 0;
    for (std::size_t j = 0; j < cent.size(); ++j) {
      double w = cost(d.row(v), cent[j], m);
      if (w < best) {  // ties keep the lowest j
        best = w;
        best_j = static_cast<int>(j);
      }
    }
    labels[v] = best_j;
  }
  return labels;
}

std::vector<std::vector<double>> update_centroids(const Dataset& d,
                                                  const std::vector<int>& labels,
                                                  std::size_t k, const MetricKind& m) {
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t v = 0; v < labels.size(); ++v)
    members[static_cast<std::size_t>(labels[v])].push_back(v);
  std::vector<std::vector<double>> cent(k);
  for (std::size_t j = 0; j < k; ++j) cent[j] = centroid(members[j], d, m);
  return cent;
}

void repair_empty(const Dataset& d, std::vector<int>& labels, std::size_t k,
                  const std::vector<std::vector<double>>& cent, const MetricKind& m) {
  std::vector<std::size_t> count(k, 0);
  for (int l : labels) ++count[static_cast<std::size_t>(l)];
  for (std::size_t j = 0; j < k; ++j) {
    if (count[j] > 0) continue;
    // re-seed at the vertex farthest from its current centroid
    double worst = -1.0;
    std::size_t pick = 0;
    for (std::size_t v = 0; v < labels.size(); ++v) {
      auto owner = static_cast<std::size_t>(labels[v]);
      if (count[owner] <= 1) continue;
      double w = cost(d.row(v), cent[owner], m);
      if (w > worst) {
        worst = w;
        pick = v;
      }
    }
    --count[static_cast<std::size_t>(labels[pick])];
    labels[pick] = static_cast<int>(j);
    count[j] = 1;
  }
}

}  // namespace

ClusterModel lloyd(const Dataset& d, const SeedClusters& init, const MetricKind& m,
                   std::size_t max_iter, double tol) {
  const std::size_t n = d.size();
  const std::size_t k = init.k;
  if (k < 1) throw ContractError("lloyd: need at least one seed cluster");
  if (k > n) throw ContractError("lloyd: more clusters than points");
  if (max_iter < 1) throw ContractError("lloyd: max_iter must be >= 1");
  if (init.centroids.size() != k)
    throw ContractError("lloyd: seed centroid count does not match K");

  ClusterModel model;
  model.k = k;
  model.centroids = init.centroids;
  model.labels = assign_all(d, model.centroids, m);

  // the euclidean update is exactly monotone; the mean update is a heuristic
  // for sam and the symmetrized divergences, so a small relative slack applies
  const double slack = m.tag == MetricTag::euclidean ? 1e-12 : 1e-9;
  double prev_objective = std::numeric_limits<double>::infinity();
  std::vector<int> prev_labels;
  std::vector<std::vector<double>> prev_centroids;

  for (model.iterations = 1;; ++model.iterations) {
    repair_empty(d, model.labels, k, model.centroids, m);
    auto cent = update_centroids(d, model.labels, k, m);
    double objective = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      objective += cost(d.row(v), cent[static_cast<std::size_t>(model.labels[v])], m);

    if (objective > prev_objective + slack * (1.0 + std::abs(prev_objective))) {
      // heuristic update overshot: keep the previous, better state
      model.labels = prev_labels;
      model.centroids = prev_centroids;
      model.objective = prev_objective;
      model.converged = true;
      break;
    }
    model.centroids = std::move(cent);
    model.objective = objective;
    if (tol < 0.0) tol = 1e-8 * objective;
    if (prev_objective - objective < tol) {
      model.converged = true;
      break;
    }
    prev_objective = objective;
    prev_labels = model.labels;
    prev_centroids = model.centroids;

    auto new_labels = assign_all(d, model.centroids, m);
    if (new_labels == model.labels) {
      model.converged = true;
      break;
    }
    if (model.iterations == max_iter) {
      model.converged = false;
      break;
    }
    model.labels = std::move(new_labels);
  }
  return model;
}

SeedClusters random_init(const Dataset& d, std::size_t k, std::uint64_t seed) {
  const std::size_t n = d.size();
  if (k < 1 || k > n) throw ContractError("random_init: K must lie in [1, N]");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i)
    std::swap(pool[i], pool[i + rng.index(n - i)]);
  pool.resize(k);

  SeedClusters s;
  s.k = k;
  std::vector<bool> chosen(n, false);
  for (std::size_t idx : pool) {
    chosen[idx] = true;
    s.members.push_back({idx});
    auto r = d.row(idx);
    s.centroids.emplace_back(r.begin(), r.end());
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!chosen[v]) s.noise.push_back(v);
  return s;
}

}  // namespace primclust

#include "primclust/validity.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <json.hpp>

#include "primclust/errors.hpp"

namespace primclust {

double davies_bouldin(const Dataset& d, const ClusterModel& model, const MetricKind& m) {
  const std::size_t k = model.k;
  if (k < 2) throw ContractError("davies_bouldin: need at least 2 clusters");
  if (model.labels.size() != d.size())
    throw ContractError("davies_bouldin: label count does not match dataset");

  std::vector<std::size_t> count(k, 0);
  std::vector<double> scatter(k, 0.0);
  for (std::size_t v = 0; v < d.size(); ++v) {
    int l = model.labels[v];
    if (l < 0 || static_cast<std::size_t>(l) >= k)
      throw ContractError("davies_bouldin: label out of range at vertex " + std::to_string(v));
    const auto& mu = model.centroids[static_cast<std::size_t>(l)];
    scatter[static_cast<std::size_t>(l)] += distance(d.row(v), {mu.data(), mu.size()}, m);
    ++count[static_cast<std::size_t>(l)];
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (count[j] == 0) throw ContractError("davies_bouldin: cluster " + std::to_string(j) + " is empty");
    scatter[j] /= static_cast<double>(count[j]);
  }

  double db = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const auto& mi = model.centroids[i];
      const auto& mj = model.centroids[j];
      double delta = distance({mi.data(), mi.size()}, {mj.data(), mj.size()}, m);
      if (delta <= 0.0)
        throw DegenerateError("davies_bouldin: clusters " + std::to_string(i) + " and " +
                              std::to_string(j) + " have coincident centroids");
      worst = std::max(worst, (scatter[i] + scatter[j]) / delta);
    }
    db += worst;
  }
  return db / static_cast<double>(k);
}

ValidityReport overlap_score(const std::vector<int>& labels,
                             const std::vector<int>& reference) {
  if (labels.size() != reference.size())
    throw ContractError("overlap_score: " + std::to_string(labels.size()) + " labels vs " +
                        std::to_string(reference.size()) + " reference entries");
  if (labels.empty()) throw ContractError("overlap_score: empty label vectors");

  // compact both sides to 0..K-1 / 0..T-1 (reference ids may be arbitrary)
  std::map<int, std::size_t> cluster_id, class_id;
  for (int l : labels)
    if (l >= 0) cluster_id.emplace(l, cluster_id.size());
  for (int r : reference) class_id.emplace(r, class_id.size());

  ValidityReport rep;
  rep.confusion.assign(cluster_id.size(), std::vector<std::size_t>(class_id.size(), 0));
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] < 0) continue;
    rep.confusion[cluster_id[labels[v]]][class_id[reference[v]]]++;
  }

  std::vector<std::size_t> class_total(class_id.size(), 0);
  for (int r : reference) ++class_total[class_id[r]];
  std::vector<std::size_t> class_covered(class_id.size(), 0);
  std::size_t covered = 0;
  for (const auto& row : rep.confusion) {
    std::size_t best = 0, best_class = 0;
    for (std::size_t t = 0; t < row.size(); ++t)
      if (row[t] > best) {
        best = row[t];
        best_class = t;
      }
    covered += best;
    if (best > 0) class_covered[best_class] += best;
  }
  rep.score = static_cast<double>(covered) / static_cast<double>(labels.size());
  rep.per_class_scores.resize(class_id.size());
  for (std::size_t t = 0; t < class_id.size(); ++t)
    rep.per_class_scores[t] =
        static_cast<double>(class_covered[t]) / static_cast<double>(class_total[t]);
  return rep;
}

void write_validity_json(const ValidityReport& r, const std::string& path) {
  nlohmann::json j;
  if (r.db_index >= 0.0) j["davies_bouldin"] = r.db_index;
  j["score"] = r.score;
  j["per_class_scores"] = r.per_class_scores;
  j["confusion"] = r.confusion;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

void write_confusion_csv(const ValidityReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (const auto& row : r.confusion) {
    for (std::size_t t = 0; t < row.size(); ++t) out << (t ? "," : "") << row[t];
    out << '\n';
  }
}

}  // namespace primclust

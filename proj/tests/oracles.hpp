// Independent reference implementations used only by the test suites.  These
// deliberately take different algorithmic routes from the library so the two
// sides check each other.
#ifndef PRIMCLUST_TESTS_ORACLES_HPP
#define PRIMCLUST_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "primclust/dataset.hpp"
#include "primclust/metrics.hpp"
#include "primclust/rng.hpp"

namespace oracles {

// ---- exact minimum spanning tree by exhaustive enumeration -----------------
//
// Every labeled tree on n vertices corresponds to a Prufer sequence of length
// n-2, so iterating all n^(n-2) sequences enumerates all spanning trees of
// K_n.  Decoding is textbook: repeatedly join the smallest leaf not in the
// remaining sequence to the next sequence entry.

inline std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int s : seq) ++degree[static_cast<std::size_t>(s)];
  std::vector<std::pair<int, int>> edges;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int s : seq) {
    int leaf = -1;
    for (int v = 0; v < n; ++v)
      if (degree[static_cast<std::size_t>(v)] == 1 && !used[static_cast<std::size_t>(v)]) {
        leaf = v;
        break;
      }
    edges.emplace_back(leaf, s);
    used[static_cast<std::size_t>(leaf)] = true;
    --degree[static_cast<std::size_t>(s)];
  }
  // two vertices of degree one remain
  int a = -1, b = -1;
  for (int v = 0; v < n; ++v) {
    if (used[static_cast<std::size_t>(v)] || degree[static_cast<std::size_t>(v)] != 1) continue;
    (a < 0 ? a : b) = v;
  }
  edges.emplace_back(a, b);
  return edges;
}

// minimal total length over every spanning tree, edge lengths summed in
// sorted order; also returns the sorted edge-length multiset of a minimizer
struct BruteMst {
  double total;
  std::vector<double> edge_lengths;
};

inline BruteMst brute_force_mst(const primclust::DissimilarityMatrix& m) {
  const int n = static_cast<int>(m.size());
  BruteMst best{std::numeric_limits<double>::infinity(), {}};
  if (n == 2) {
    best.total = m(0, 1);
    best.edge_lengths = {m(0, 1)};
    return best;
  }
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
  while (true) {
    auto edges = prufer_decode(seq, n);
    std::vector<double> lens;
    lens.reserve(edges.size());
    for (auto [u, v] : edges)
      lens.push_back(m(static_cast<std::size_t>(u), static_cast<std::size_t>(v)));
    std::sort(lens.begin(), lens.end());
    double total = std::accumulate(lens.begin(), lens.end(), 0.0);
    if (total < best.total) {
      best.total = total;
      best.edge_lengths = lens;
    }
    // next sequence
    int pos = n - 3;
    while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == n - 1) {
      seq[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++seq[static_cast<std::size_t>(pos)];
  }
  return best;
}

// ---- high-precision Poisson closed forms (long double, series routes) ------

inline long double pfa_ref(std::size_t k0, long double x) {
  // (1 - e^-x)^k0 via expm1l for precision
  long double f = -std::expm1l(-x);
  return std::powl(f, static_cast<long double>(k0));
}

inline std::size_t least_k0_ref(long double p_fa, long double x, std::size_t cap) {
  for (std::size_t k = 1; k <= cap; ++k)
    if (pfa_ref(k, x) <= p_fa) return k;
  return cap;
}

inline long double pmf_ref(std::size_t k, long double x) {
  long double f = -std::expm1l(-x);
  return std::powl(f, static_cast<long double>(k)) * (1.0L - f);
}

// mean false-cluster size by summing the series sum_{k>=1} (k+1) f^k (1-f)
inline long double mean_size_series_ref(long double x) {
  long double f = -std::expm1l(-x);
  long double q = 1.0L - f;
  long double sum = 0.0L, term;
  long double fk = f;  // f^k
  for (std::size_t k = 1; k < 2000000; ++k) {
    term = static_cast<long double>(k + 1) * fk * q;
    sum += term;
    fk *= f;
    if (term < 1e-24L * (sum + 1e-30L)) break;
  }
  return sum;
}

// ---- naive Davies-Bouldin ---------------------------------------------------

inline double naive_db(const primclust::Dataset& d, const std::vector<int>& labels,
                       const std::vector<std::vector<double>>& centroids,
                       const primclust::MetricKind& m) {
  const std::size_t k = centroids.size();
  std::vector<double> s(k, 0.0);
  std::vector<std::size_t> cnt(k, 0);
  for (std::size_t v = 0; v < d.size(); ++v) {
    auto l = static_cast<std::size_t>(labels[v]);
    s[l] += primclust::distance(d.row(v), {centroids[l].data(), centroids[l].size()}, m);
    ++cnt[l];
  }
  for (std::size_t j = 0; j < k; ++j) s[j] /= static_cast<double>(cnt[j]);
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      double delta = primclust::distance({centroids[i].data(), centroids[i].size()},
                                         {centroids[j].data(), centroids[j].size()}, m);
      worst = std::max(worst, (s[i] + s[j]) / delta);
    }
    acc += worst;
  }
  return acc / static_cast<double>(k);
}

// ---- synthetic data ---------------------------------------------------------

// uniform disk components: compact support, per-axis std R/2, rms width R/sqrt(2)
inline primclust::Dataset disk_mixture(std::size_t k, std::size_t per_cluster,
                                       double radius, double min_separation,
                                       std::uint64_t seed, std::vector<int>* truth) {
  primclust::Rng rng(seed);
  const double box = min_separation * 1.35 * std::sqrt(static_cast<double>(k));
  std::vector<std::array<double, 2>> centers;
  while (centers.size() < k) {
    std::array<double, 2> c{rng.uniform(0.0, box), rng.uniform(0.0, box)};
    bool ok = true;
    for (auto& o : centers) {
      double dx = c[0] - o[0], dy = c[1] - o[1];
      if (std::sqrt(dx * dx + dy * dy) < min_separation) ok = false;
    }
    if (ok) centers.push_back(c);
    else centers.clear();  // restart placement to avoid dead ends
  }
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < per_cluster; ++i) {
      double r = radius * std::sqrt(rng.uniform01());
      double th = rng.uniform(0.0, 2.0 * M_PI);
      rows.push_back({centers[j][0] + r * std::cos(th), centers[j][1] + r * std::sin(th)});
      labels.push_back(static_cast<int>(j));
    }
  }
  // shuffle so cluster blocks are interleaved
  for (std::size_t i = rows.size(); i > 1; --i) {
    std::size_t j = rng.index(i);
    std::swap(rows[i - 1], rows[j]);
    std::swap(labels[i - 1], labels[j]);
  }
  if (truth) *truth = labels;
  return primclust::Dataset::from_rows(rows, "disk-mixture");
}

inline primclust::Dataset gaussian_mixture_2d(std::size_t k, std::size_t per_cluster,
                                              double sigma, double min_separation,
                                              std::uint64_t seed, std::vector<int>* truth) {
  primclust::Rng rng(seed);
  const double box = min_separation * 1.35 * std::sqrt(static_cast<double>(k));
  std::vector<std::array<double, 2>> centers;
  while (centers.size() < k) {
    std::array<double, 2> c{rng.uniform(0.0, box), rng.uniform(0.0, box)};
    bool ok = true;
    for (auto& o : centers) {
      double dx = c[0] - o[0], dy = c[1] - o[1];
      if (std::sqrt(dx * dx + dy * dy) < min_separation) ok = false;
    }
    if (ok) centers.push_back(c);
    else centers.clear();
  }
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < per_cluster; ++i) {
      rows.push_back({centers[j][0] + sigma * rng.normal(),
                      centers[j][1] + sigma * rng.normal()});
      labels.push_back(static_cast<int>(j));
    }
  for (std::size_t i = rows.size(); i > 1; --i) {
    std::size_t j = rng.index(i);
    std::swap(rows[i - 1], rows[j]);
    std::swap(labels[i - 1], labels[j]);
  }
  if (truth) *truth = labels;
  return primclust::Dataset::from_rows(rows, "gaussian-mixture");
}

// positive spectra-like mixture: smooth class baselines, multiplicative
// channel noise and a global scale jitter (invisible to the divergences)
inline primclust::Dataset spectra_mixture(const std::vector<std::size_t>& sizes,
                                          std::size_t dim, std::uint64_t seed,
                                          std::vector<int>* truth) {
  primclust::Rng rng(seed);
  const std::size_t k = sizes.size();
  std::vector<std::vector<double>> bases;
  while (bases.size() < k) {
    std::vector<double> b(dim);
    double amp = 0.3 + 0.6 * rng.uniform01();
    double phase = rng.uniform(0.0, 2.0 * M_PI);
    double freq = 1.0 + 2.0 * rng.uniform01();
    for (std::size_t j = 0; j < dim; ++j) {
      double x = static_cast<double>(j) / static_cast<double>(dim - 1);
      b[j] = std::max(0.15, 1.0 + amp * std::sin(phase + 2.0 * M_PI * freq * x));
    }
    // keep classes pairwise separated in symmetrized KL
    bool ok = true;
    for (const auto& o : bases)
      if (primclust::distance({b.data(), dim}, {o.data(), dim},
                              primclust::MetricKind::kl()) < 0.05)
        ok = false;
    if (ok) bases.push_back(b);
  }
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < sizes[c]; ++i) {
      std::vector<double> v(dim);
      double scale = std::exp(0.3 * rng.normal());
      for (std::size_t j = 0; j < dim; ++j)
        v[j] = std::max(1e-3, bases[c][j] * (1.0 + 0.04 * rng.normal())) * scale;
      rows.push_back(std::move(v));
      labels.push_back(static_cast<int>(c));
    }
  for (std::size_t i = rows.size(); i > 1; --i) {
    std::size_t j = rng.index(i);
    std::swap(rows[i - 1], rows[j]);
    std::swap(labels[i - 1], labels[j]);
  }
  if (truth) *truth = labels;
  return primclust::Dataset::from_rows(rows, "spectra-mixture");
}

inline primclust::Dataset random_positive(std::size_t n, std::size_t dim,
                                          std::uint64_t seed) {
  primclust::Rng rng(seed);
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
  for (auto& r : rows)
    for (double& v : r) v = 0.05 + rng.uniform01();
  return primclust::Dataset::from_rows(rows, "random-positive");
}

}  // namespace oracles

#endif

#include "primclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "primclust/errors.hpp"

namespace primclust {

MetricKind parse_metric(const std::string& name, double alpha) {
  if (name == "euclidean") return MetricKind::euclidean();
  if (name == "sam") return MetricKind::sam();
  if (name == "kl") return MetricKind::kl();
  if (name == "renyi") {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw ConfigError("renyi alpha must lie in (0,1), got " + std::to_string(alpha));
    return MetricKind::renyi(alpha);
  }
  throw ConfigError("unknown metric '" + name + "' (expected euclidean|sam|kl|renyi)");
}

std::string metric_name(const MetricKind& m) {
  switch (m.tag) {
    case MetricTag::euclidean: return "euclidean";
    case MetricTag::sam: return "sam";
    case MetricTag::kullback_leibler_sym: return "kl";
    case MetricTag::renyi_sym: return "renyi";
  }
  return "?";
}

std::vector<double> normalize(std::span<const double> x, std::size_t index_for_error) {
  double sum = 0.0;
  for (double v : x) {
    if (v < 0.0)
      throw DomainError("vector " + std::to_string(index_for_error) +
                        " has a negative component; divergences need nonnegative data");
    sum += v;
  }
  if (sum <= 0.0)
    throw DomainError("vector " + std::to_string(index_for_error) +
                      " sums to zero; cannot normalize");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / sum;
  return out;
}

namespace {

double euclidean_dist(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double sam_angle(std::span<const double> x, std::span<const double> y) {
  double dot = 0.0, nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  if (nx <= 0.0 || ny <= 0.0)
    throw DomainError("sam: zero-norm vector");
  double c = dot / std::sqrt(nx * ny);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

// sum_i (p_i - q_i) log(p_i / q_i); coordinates where both are zero
// contribute nothing, a single-sided zero makes the divergence infinite.
double kl_sym(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0 && q[i] == 0.0) continue;
    if (p[i] == 0.0 || q[i] == 0.0)
      return std::numeric_limits<double>::infinity();
    s += (p[i] - q[i]) * std::log(p[i] / q[i]);
  }
  return std::max(s, 0.0);
}

double renyi_sym(const std::vector<double>& p, const std::vector<double>& q, double alpha) {
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0 && q[i] == 0.0) continue;
    a += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
    b += std::pow(q[i], alpha) * std::pow(p[i], 1.0 - alpha);
  }
  if (a <= 0.0 || b <= 0.0)
    return std::numeric_limits<double>::infinity();
  double v = (std::log(a) + std::log(b)) / (alpha - 1.0);
  return std::max(v, 0.0);
}

}  // namespace

double distance(std::span<const double> x, std::span<const double> y, const MetricKind& m) {
  if (x.size() != y.size())
    throw ContractError("distance: dimension mismatch (" + std::to_string(x.size()) +
                        " vs " + std::to_string(y.size()) + ")");
  switch (m.tag) {
    case MetricTag::euclidean:
      return euclidean_dist(x, y);
    case MetricTag::sam:
      return sam_angle(x, y);
    case MetricTag::kullback_leibler_sym:
      return kl_sym(normalize(x), normalize(y));
    case MetricTag::renyi_sym: {
      if (!(m.alpha > 0.0 && m.alpha < 1.0))
        throw ContractError("renyi alpha must lie in (0,1)");
      return renyi_sym(normalize(x), normalize(y), m.alpha);
    }
  }
  throw ContractError("distance: unknown metric tag");
}

DissimilarityMatrix pairwise_matrix(const Dataset& d, const MetricKind& m) {
  const std::size_t n = d.size();
  DissimilarityMatrix out(n);
  double max_finite = 0.0;
  bool saw_infinite = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v;
      try {
        v = distance(d.row(i), d.row(j), m);
      } catch (const DomainError& e) {
        throw DomainError("pair (" + std::to_string(i) + "," + std::to_string(j) +
                          "): " + e.what());
      }
      if (std::isinf(v)) {
        saw_infinite = true;
      } else {
        max_finite = std::max(max_finite, v);
      }
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  if (saw_infinite) {
    const double cap = 1.0 + max_finite;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (std::isinf(out(i, j))) out(i, j) = cap;
  }
  return out;
}

}  // namespace primclust

#include "primclust/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "primclust/errors.hpp"
#include "primclust/rng.hpp"

namespace primclust {

DetectionParams DetectionParams::from_support(std::size_t dim, std::size_t n_points,
                                              double support_volume) {
  if (dim == 0) throw ContractError("DetectionParams: dimension must be >= 1");
  if (n_points < 2) throw ContractError("DetectionParams: need at least 2 points");
  if (!(support_volume > 0.0))
    throw ContractError("DetectionParams: support volume must be positive");
  DetectionParams p;
  p.dim = dim;
  p.n_points = n_points;
  p.support_volume = support_volume;
  p.lambda = unit_ball_volume(dim) * static_cast<double>(n_points) / support_volume;
  return p;
}

double unit_ball_volume(std::size_t dim) {
  if (dim == 0) throw ContractError("unit_ball_volume: dimension must be >= 1");
  const double l = static_cast<double>(dim);
  return 2.0 * std::pow(M_PI, l / 2.0) / (l * std::tgamma(l / 2.0));
}

double connection_cdf(double epsilon, double lambda, std::size_t dim) {
  if (epsilon < 0.0) throw ContractError("connection_cdf: epsilon must be >= 0");
  if (!(lambda > 0.0)) throw ContractError("connection_cdf: lambda must be positive");
  return -std::expm1(-lambda * std::pow(epsilon, static_cast<double>(dim)));
}

double false_alarm_probability(std::size_t k0, double epsilon, const DetectionParams& p) {
  if (k0 < 1) throw ContractError("false_alarm_probability: k0 must be >= 1");
  const double f = connection_cdf(epsilon, p.lambda, p.dim);
  return std::pow(f, static_cast<double>(k0));
}

std::size_t min_run_length(double p_fa, double epsilon, const DetectionParams& p) {
  if (!(p_fa > 0.0 && p_fa < 1.0))
    throw ContractError("min_run_length: p_fa must lie in (0,1)");
  if (!(epsilon > 0.0)) throw ContractError("min_run_length: epsilon must be positive");
  const double x = p.lambda * std::pow(epsilon, static_cast<double>(p.dim));
  const double em = std::exp(-x);
  if (em == 0.0)
    throw DegenerateError(
        "min_run_length: connection probability is numerically 1 at this threshold");
  const double log_f = std::log1p(-em);  // log(1 - e^-x), accurate for small em
  double raw = std::log(p_fa) / log_f;
  std::size_t cap = p.n_points >= 2 ? p.n_points - 1 : 1;
  if (!std::isfinite(raw) || raw >= static_cast<double>(cap)) return cap;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw)));
}

double run_length_pmf(std::size_t k, double epsilon, const DetectionParams& p) {
  const double f = connection_cdf(epsilon, p.lambda, p.dim);
  return std::pow(f, static_cast<double>(k)) * (1.0 - f);
}

double expected_false_cluster_size(double epsilon, const DetectionParams& p) {
  if (!(epsilon > 0.0))
    throw ContractError("expected_false_cluster_size: epsilon must be positive");
  const double x = p.lambda * std::pow(epsilon, static_cast<double>(p.dim));
  if (x > 700.0)
    throw DomainError("expected_false_cluster_size: lambda*eps^L = " +
                      std::to_string(x) + " overflows");
  return 2.0 * std::sinh(x);
}

double default_threshold(std::span<const double> trajectory) {
  if (trajectory.size() < 2)
    throw ContractError("default_threshold: need at least 2 edges");
  double mean = 0.0;
  for (double g : trajectory) mean += g;
  mean /= static_cast<double>(trajectory.size());
  double var = 0.0;
  for (double g : trajectory) var += (g - mean) * (g - mean);
  var /= static_cast<double>(trajectory.size());
  return std::sqrt(var);
}

double estimate_support_volume(const Dataset& d, const MetricKind& m, std::uint64_t seed) {
  const std::size_t n = d.size();
  if (n < 2) throw ContractError("estimate_support_volume: need at least 2 points");
  double eps0 = 0.0;
  if (n <= 2000) {
    double diameter = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        diameter = std::max(diameter, distance(d.row(i), d.row(j), m));
    eps0 = diameter / 2.0;
  } else {
    // max distance from a point 2-approximates the diameter, so it estimates
    // the covering radius directly; 4 seeded restarts, keep the maximum
    Rng rng(seed);
    for (int restart = 0; restart < 4; ++restart) {
      std::size_t start = rng.index(n);
      for (std::size_t j = 0; j < n; ++j)
        eps0 = std::max(eps0, distance(d.row(start), d.row(j), m));
    }
  }
  if (eps0 <= 0.0)
    throw DegenerateError("estimate_support_volume: all points coincide");
  return unit_ball_volume(d.dim()) * std::pow(eps0, static_cast<double>(d.dim()));
}

}  // namespace primclust

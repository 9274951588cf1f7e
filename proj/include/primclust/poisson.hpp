#ifndef PRIMCLUST_POISSON_HPP
#define PRIMCLUST_POISSON_HPP

#include <cstddef>
#include <cstdint>
#include <span>

#include "primclust/dataset.hpp"
#include "primclust/metrics.hpp"

namespace primclust {

// Quantities of the homogeneous-Poisson null used to control the
// false-alarm rate of trajectory thresholding.
struct DetectionParams {
  double epsilon = 0.0;         // trajectory threshold, metric units
  double p_fa = 0.01;           // target false-alarm probability
  std::size_t dim = 0;          // L
  std::size_t n_points = 0;     // N
  double support_volume = 0.0;  // V, volume of a ball covering the data
  double lambda = 0.0;          // intensity C_L * N / V
  std::size_t k0 = 1;           // minimum run length, in edges

  // lambda from the covering-ball calibration.
  static DetectionParams from_support(std::size_t dim, std::size_t n_points,
                                      double support_volume);
};

// C_L = 2 pi^(L/2) / (L Gamma(L/2))
double unit_ball_volume(std::size_t dim);

// F(eps) = 1 - exp(-lambda eps^L): probability of finding a vertex within eps.
double connection_cdf(double epsilon, double lambda, std::size_t dim);

// P_FA = F(eps)^k0
double false_alarm_probability(std::size_t k0, double epsilon, const DetectionParams& p);

// Least k0 with P_FA <= p_fa, floored at 1 and capped at N-1.  Throws
// DegenerateError when the connection probability is numerically 1.
std::size_t min_run_length(double p_fa, double epsilon, const DetectionParams& p);

// P(exactly k sub-eps connections, then a longer edge) = F^k (1-F)
double run_length_pmf(std::size_t k, double epsilon, const DetectionParams& p);

// <k> = 2 sinh(lambda eps^L): mean vertex count of a false-alarm cluster,
// zero-length runs included.  Throws DomainError on overflow.
double expected_false_cluster_size(double epsilon, const DetectionParams& p);

// Population standard deviation of the trajectory; 0 means the caller must
// supply epsilon explicitly (reported via DegenerateError).
double default_threshold(std::span<const double> trajectory);

// V = C_L eps0^L with eps0 = half the dataset diameter under metric m.
// Exact farthest pair up to 2000 points, then a restarted farthest-point
// approximation (seeded).
double estimate_support_volume(const Dataset& d, const MetricKind& m,
                               std::uint64_t seed = 0);

}  // namespace primclust

#endif

#include "primclust/mc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "primclust/dataset.hpp"
#include "primclust/errors.hpp"
#include "primclust/metrics.hpp"
#include "primclust/poisson.hpp"
#include "primclust/prim.hpp"
#include "primclust/rng.hpp"

namespace primclust {

std::vector<std::size_t> maximal_run_sizes(std::span<const double> trajectory,
                                           double epsilon) {
  std::vector<std::size_t> sizes;
  std::size_t run = 0;
  for (double g : trajectory) {
    if (g <= epsilon) {
      ++run;
    } else {
      if (run >= 1) sizes.push_back(run + 1);
      run = 0;
    }
  }
  if (run >= 1) sizes.push_back(run + 1);
  return sizes;
}

std::vector<double> completed_run_sizes(std::span<const double> trajectory, double epsilon) {
  std::vector<double> sizes;
  std::size_t run = 0;
  for (double g : trajectory) {
    if (g <= epsilon) {
      ++run;
    } else {
      sizes.push_back(run >= 1 ? static_cast<double>(run + 1) : 0.0);
      run = 0;
    }
  }
  return sizes;
}

NullTrialResult run_null_trials(std::size_t n, std::size_t dim,
                                std::vector<double> eps_grid, std::size_t trials,
                                std::uint64_t seed, double p_fa) {
  if (n < 2) throw ContractError("run_null_trials: need at least 2 points");
  if (trials < 1) throw ContractError("run_null_trials: need at least 1 trial");
  for (std::size_t i = 1; i < eps_grid.size(); ++i)
    if (eps_grid[i] <= eps_grid[i - 1])
      throw ContractError("run_null_trials: eps grid must be strictly increasing");

  NullTrialResult res;
  res.n_points = n;
  res.dim = dim;
  res.trials = trials;
  res.seed = seed;
  res.generator = Rng::generator_id();
  res.p_fa = p_fa;
  res.eps_grid = std::move(eps_grid);
  const std::size_t ne = res.eps_grid.size();

  std::vector<double> sum(ne, 0.0), sumsq(ne, 0.0);
  std::vector<std::size_t> count(ne, 0);
  double lambda_sum = 0.0;

  Rng master(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = master.substream(t);
    std::vector<double> values(n * dim);
    for (double& v : values) v = rng.uniform01();
    Dataset d(std::move(values), dim, "nullsim");

    auto matrix = pairwise_matrix(d, MetricKind::euclidean());
    auto g = trajectory(prim(matrix, 0));

    double volume = estimate_support_volume(d, MetricKind::euclidean(), seed);
    lambda_sum += unit_ball_volume(dim) * static_cast<double>(n) / volume;

    for (std::size_t e = 0; e < ne; ++e) {
      for (double s : completed_run_sizes(g, res.eps_grid[e])) {
        sum[e] += s;
        sumsq[e] += s * s;
        ++count[e];
      }
    }
  }

  res.lambda_mean = lambda_sum / static_cast<double>(trials);
  DetectionParams params;
  params.dim = dim;
  params.n_points = n;
  params.lambda = res.lambda_mean;
  for (std::size_t e = 0; e < ne; ++e) {
    const double eps = res.eps_grid[e];
    const std::size_t c = count[e];
    double mean = c ? sum[e] / static_cast<double>(c) : 0.0;
    double var = c > 1 ? (sumsq[e] - sum[e] * mean) / static_cast<double>(c - 1) : 0.0;
    res.mean_size_emp.push_back(mean);
    res.std_size_emp.push_back(std::sqrt(std::max(var, 0.0)));
    res.sample_count.push_back(c);
    double x = res.lambda_mean * std::pow(eps, static_cast<double>(dim));
    res.size_theory.push_back(x <= 700.0 ? 2.0 * std::sinh(x)
                                         : std::numeric_limits<double>::infinity());
    std::size_t k0;
    try {
      k0 = min_run_length(p_fa, eps, params);
    } catch (const DegenerateError&) {
      k0 = n - 1;
    }
    res.k0_theory.push_back(k0);
  }
  return res;
}

std::vector<std::size_t> k0_curve(std::size_t n, std::size_t dim, double p_fa,
                                  std::span<const double> eps_grid) {
  const double eps0 = std::sqrt(static_cast<double>(dim)) / 2.0;
  const double volume = unit_ball_volume(dim) * std::pow(eps0, static_cast<double>(dim));
  DetectionParams params = DetectionParams::from_support(dim, n, volume);
  std::vector<std::size_t> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) out.push_back(min_run_length(p_fa, eps, params));
  return out;
}

void write_null_csv(const NullTrialResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "eps,k0_theory,mean_size_emp,std_size_emp,size_theory\n";
  out.precision(12);
  for (std::size_t e = 0; e < r.eps_grid.size(); ++e)
    out << r.eps_grid[e] << ',' << r.k0_theory[e] << ',' << r.mean_size_emp[e] << ','
        << r.std_size_emp[e] << ',' << r.size_theory[e] << '\n';
}

}  // namespace primclust

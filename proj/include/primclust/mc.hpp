#ifndef PRIMCLUST_MC_HPP
#define PRIMCLUST_MC_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace primclust {

// Per-epsilon simulation summary for the uniform-null experiment.
struct NullTrialResult {
  std::size_t n_points = 0;
  std::size_t dim = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string generator;
  double p_fa = 0.01;
  double lambda_mean = 0.0;  // Eq.-4 intensity averaged over trials
  std::vector<double> eps_grid;
  std::vector<std::size_t> k0_theory;
  std::vector<double> mean_size_emp;   // completed-run statistic, zero runs included
  std::vector<double> std_size_emp;
  std::vector<double> size_theory;     // 2 sinh(lambda eps^L)
  std::vector<std::size_t> sample_count;
};

// Vertex counts (k edges -> k+1 vertices) of every maximal sub-epsilon run.
std::vector<std::size_t> maximal_run_sizes(std::span<const double> trajectory,
                                           double epsilon);

// The statistic compared against 2 sinh(lambda eps^L): every above-threshold
// edge closes a run of k >= 0 short edges and contributes (k+1 if k >= 1
// else 0); a trailing unterminated run is censored and skipped.  Zero-length
// runs enter as zeros, matching the unconditioned expectation the closed
// form describes.
std::vector<double> completed_run_sizes(std::span<const double> trajectory, double epsilon);

// trials x (N uniform points in [0,1]^dim -> exact euclidean MST ->
// trajectory); per-trial seeds derive from the master seed.
NullTrialResult run_null_trials(std::size_t n, std::size_t dim,
                                std::vector<double> eps_grid, std::size_t trials,
                                std::uint64_t seed, double p_fa = 0.01);

// Eq.-6 k0 per grid epsilon with the unit-cube circumscribed-ball volume
// V = C_L (sqrt(L)/2)^L.
std::vector<std::size_t> k0_curve(std::size_t n, std::size_t dim, double p_fa,
                                  std::span<const double> eps_grid);

// columns: eps,k0_theory,mean_size_emp,std_size_emp,size_theory
void write_null_csv(const NullTrialResult& r, const std::string& path);

}  // namespace primclust

#endif

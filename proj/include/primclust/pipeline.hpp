#ifndef PRIMCLUST_PIPELINE_HPP
#define PRIMCLUST_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "primclust/kmeans.hpp"
#include "primclust/metrics.hpp"
#include "primclust/mode_extract.hpp"
#include "primclust/nn_index.hpp"

namespace primclust {

enum class IndexChoice { exact, nn };

struct PipelineConfig {
  // input: a CSV or a raster header+data pair
  std::string input;
  bool csv_has_header = false;
  std::string raster_data;            // set together with input = header path
  std::size_t subsample_rows = 1;
  std::size_t subsample_cols = 1;

  std::string metric = "euclidean";
  double alpha = 0.5;

  IndexChoice index = IndexChoice::exact;
  IndexParams index_params;

  std::optional<double> epsilon;      // empty = auto (trajectory std dev)
  double p_fa = 0.01;
  std::optional<std::size_t> k0;      // empty = auto (Eq.-6 run length)

  bool refine = true;
  std::size_t max_iter = 100;
  double tol = -1.0;                  // <0 = 1e-8 x initial objective
  bool keep_noise = false;

  std::string reference_labels;       // optional labeled CSV for validity
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::size_t root = 0;
};

struct Diagnostic {
  std::string field;
  std::string message;
};

// Collects every violated constraint; empty iff run() preconditions hold.
std::vector<Diagnostic> validate_config(const PipelineConfig& c);

struct RunResult {
  std::size_t n_points = 0;
  std::size_t k_seed = 0;
  std::size_t k_final = 0;
  double epsilon = 0.0;
  std::size_t k0 = 1;
  std::size_t noise_count = 0;
  double objective = 0.0;
  double score = -1.0;                // -1 when no reference supplied
  double db_index = -1.0;
  std::size_t distance_evaluations = 0;
  std::vector<int> labels;
  std::vector<std::string> artifacts;
};

// load -> (exact|nn) MST -> trajectory -> Poisson-parameterized extraction ->
// optional Lloyd refinement -> exports.  Partial artifacts are removed when a
// stage fails.
RunResult run(const PipelineConfig& c);

// flat key=value config file; unknown keys are reported as errors
PipelineConfig config_from_file(const std::string& path);
void apply_config_entry(PipelineConfig& c, const std::string& key, const std::string& value);

}  // namespace primclust

#endif

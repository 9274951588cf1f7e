#include "primclust/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "primclust/errors.hpp"
#include "primclust/io.hpp"
#include "primclust/poisson.hpp"
#include "primclust/rng.hpp"
#include "primclust/validity.hpp"

namespace primclust {

namespace {

constexpr const char* kVersion = "0.1.0";

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

std::vector<Diagnostic> validate_config(const PipelineConfig& c) {
  std::vector<Diagnostic> diags;
  auto bad = [&](const std::string& field, const std::string& msg) {
    diags.push_back({field, msg});
  };
  if (c.input.empty()) bad("input", "no input file given");
  if (c.metric != "euclidean" && c.metric != "sam" && c.metric != "kl" && c.metric != "renyi")
    bad("metric", "must be euclidean|sam|kl|renyi, got '" + c.metric + "'");
  if (c.metric == "renyi" && !(c.alpha > 0.0 && c.alpha < 1.0))
    bad("alpha", "must lie in (0,1) exclusive, got " + std::to_string(c.alpha));
  if (!(c.p_fa > 0.0 && c.p_fa < 1.0))
    bad("pfa", "must lie in (0,1), got " + std::to_string(c.p_fa));
  if (c.epsilon && !(*c.epsilon > 0.0)) bad("epsilon", "must be positive");
  if (c.k0 && *c.k0 < 1) bad("k0", "must be >= 1");
  if (c.subsample_rows < 1 || c.subsample_cols < 1) bad("subsample", "steps must be >= 1");
  if (!(c.index_params.epsilon_conf > 0.0 && c.index_params.epsilon_conf < 1.0))
    bad("leaf-confidence", "must lie in (0,1)");
  if (c.index_params.leaf_occupancy < 2) bad("leaf-occupancy", "must be >= 2");
  if (c.index_params.sample_size < 2) bad("sample-size", "must be >= 2");
  if (c.max_iter < 1) bad("max-iter", "must be >= 1");
  if (c.out_dir.empty()) bad("out", "output directory must be named");
  return diags;
}

namespace {

struct ArtifactGuard {
  std::vector<std::string> files;
  bool committed = false;
  ~ArtifactGuard() {
    if (committed) return;
    for (const auto& f : files) {
      std::error_code ec;
      std::filesystem::remove(f, ec);
    }
  }
};

}  // namespace

RunResult run(const PipelineConfig& c) {
  {
    auto diags = validate_config(c);
    if (!diags.empty()) {
      std::string msg = "invalid configuration:";
      for (const auto& d : diags) msg += "\n  " + d.field + ": " + d.message;
      throw ConfigError(msg);
    }
  }

  std::filesystem::create_directories(c.out_dir);
  ArtifactGuard guard;
  auto out_path = [&](const std::string& name) {
    return (std::filesystem::path(c.out_dir) / name).string();
  };
  nlohmann::json manifest;
  nlohmann::json timings;
  double t0 = now_ms();

  // ---- load ----
  Dataset data = c.raster_data.empty() ? load_csv(c.input, c.csv_has_header)
                                       : load_raster(c.input, c.raster_data);
  if (c.subsample_rows > 1 || c.subsample_cols > 1)
    data = subsample(data, c.subsample_rows, c.subsample_cols);
  if (data.size() < 2) throw DataError("insufficient data: need at least 2 points");
  timings["load_ms"] = now_ms() - t0;

  const MetricKind metric = parse_metric(c.metric, c.alpha);
  RunResult res;
  res.n_points = data.size();

  // ---- MST + trajectory ----
  t0 = now_ms();
  PrimDescriptor desc;
  if (c.index == IndexChoice::exact) {
    auto matrix = pairwise_matrix(data, metric);
    desc = prim(matrix, c.root);
    res.distance_evaluations = data.size() * (data.size() - 1) / 2;
  } else {
    IndexParams params = c.index_params;
    params.seed = c.seed;
    auto nn = nn_mst(data, metric, params, c.root);
    desc = std::move(nn.descriptor);
    res.distance_evaluations = nn.distance_evaluations;
  }
  auto g = trajectory(desc);
  timings["mst_ms"] = now_ms() - t0;
  write_trajectory_csv(desc, out_path("trajectory.csv"));
  guard.files.push_back(out_path("trajectory.csv"));

  // ---- detection parameters (auto order: epsilon, then volume, then k0) ----
  t0 = now_ms();
  double epsilon;
  if (c.epsilon) {
    epsilon = *c.epsilon;
  } else {
    epsilon = default_threshold(g);
    if (epsilon <= 0.0)
      throw DegenerateError(
          "auto threshold: trajectory has zero spread; supply --epsilon explicitly");
  }
  DetectionParams params = DetectionParams::from_support(
      data.dim(), data.size(), estimate_support_volume(data, metric, c.seed));
  params.epsilon = epsilon;
  params.p_fa = c.p_fa;
  params.k0 = c.k0 ? *c.k0 : min_run_length(c.p_fa, epsilon, params);
  res.epsilon = epsilon;
  res.k0 = params.k0;

  // ---- extraction ----
  SeedClusters seeds = extract(desc, params, data, metric);
  res.k_seed = seeds.k;
  res.noise_count = seeds.noise.size();
  timings["extract_ms"] = now_ms() - t0;
  write_seed_json(seeds, out_path("seed_clusters.json"));
  guard.files.push_back(out_path("seed_clusters.json"));
  if (seeds.k == 0)
    throw DegenerateError("no cluster passed the (epsilon=" + std::to_string(epsilon) +
                          ", k0=" + std::to_string(params.k0) +
                          ") test; every vertex is noise");

  // ---- refinement / label assembly ----
  t0 = now_ms();
  std::vector<int> labels(data.size(), -1);
  if (c.refine) {
    ClusterModel model = lloyd(data, seeds, metric, c.max_iter, c.tol);
    res.objective = model.objective;
    res.k_final = model.k;
    labels = model.labels;
    if (model.k >= 2) {
      try {
        res.db_index = davies_bouldin(data, model, metric);
      } catch (const DegenerateError&) {
        res.db_index = -1.0;  // coincident centroids; reported as absent
      }
    }
  } else {
    for (std::size_t j = 0; j < seeds.k; ++j)
      for (std::size_t v : seeds.members[j]) labels[v] = static_cast<int>(j);
    if (!c.keep_noise) {
      // absorb noise by one nearest-centroid assignment
      for (std::size_t v : seeds.noise) {
        double best = std::numeric_limits<double>::infinity();
        int best_j = 0;
        for (std::size_t j = 0; j < seeds.k; ++j) {
          const auto& mu = seeds.centroids[j];
          double w = distance(data.row(v), {mu.data(), mu.size()}, metric);
          if (w < best) {
            best = w;
            best_j = static_cast<int>(j);
          }
        }
        labels[v] = best_j;
      }
    }
    res.k_final = seeds.k;
  }
  if (c.refine && c.keep_noise)
    for (std::size_t v : seeds.noise) labels[v] = -1;
  res.labels = labels;
  timings["refine_ms"] = now_ms() - t0;

  auto written = export_labels(data, labels, out_path("labels.csv"));
  for (const auto& f : written) guard.files.push_back(f);
  res.artifacts = guard.files;

  // ---- validity ----
  if (!c.reference_labels.empty()) {
    auto reference = load_labels(c.reference_labels);
    if (reference.size() != data.size())
      throw DataError("reference labels hold " + std::to_string(reference.size()) +
                      " entries for " + std::to_string(data.size()) + " points");
    ValidityReport rep = overlap_score(labels, reference);
    rep.db_index = res.db_index;
    res.score = rep.score;
    write_validity_json(rep, out_path("validity.json"));
    guard.files.push_back(out_path("validity.json"));
    write_confusion_csv(rep, out_path("confusion.csv"));
    guard.files.push_back(out_path("confusion.csv"));
  }

  // ---- manifest ----
  manifest["version"] = kVersion;
  manifest["generator"] = Rng::generator_id();
  manifest["seed"] = c.seed;
  manifest["config"] = {
      {"input", c.input},
      {"csv_has_header", c.csv_has_header},
      {"raster_data", c.raster_data},
      {"subsample_rows", c.subsample_rows},
      {"subsample_cols", c.subsample_cols},
      {"metric", c.metric},
      {"alpha", c.alpha},
      {"index", c.index == IndexChoice::exact ? "exact" : "nn"},
      {"leaf_confidence", c.index_params.epsilon_conf},
      {"sample_size", c.index_params.sample_size},
      {"leaf_occupancy", c.index_params.leaf_occupancy},
      {"epsilon", c.epsilon ? nlohmann::json(*c.epsilon) : nlohmann::json("auto")},
      {"pfa", c.p_fa},
      {"k0", c.k0 ? nlohmann::json(*c.k0) : nlohmann::json("auto")},
      {"refine", c.refine},
      {"max_iter", c.max_iter},
      {"tol", c.tol},
      {"keep_noise", c.keep_noise},
      {"reference_labels", c.reference_labels},
      {"out", c.out_dir},
      {"seed", c.seed},
      {"root", c.root},
  };
  manifest["n_points"] = res.n_points;
  manifest["dimension"] = data.dim();
  manifest["epsilon_used"] = res.epsilon;
  manifest["k0_used"] = res.k0;
  manifest["k_seed"] = res.k_seed;
  manifest["k_final"] = res.k_final;
  manifest["noise_count"] = res.noise_count;
  manifest["distance_evaluations"] = res.distance_evaluations;
  manifest["timings"] = timings;
  {
    std::ofstream out(out_path("manifest.json"));
    if (!out) throw DataError("cannot write manifest");
    out << manifest.dump(2) << '\n';
  }
  guard.files.push_back(out_path("manifest.json"));

  res.artifacts = guard.files;
  guard.committed = true;
  return res;
}

PipelineConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  PipelineConfig c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    apply_config_entry(c, line.substr(0, eq), line.substr(eq + 1));
  }
  return c;
}

void apply_config_entry(PipelineConfig& c, const std::string& key, const std::string& value) {
  auto as_bool = [&](const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as a flag");
  };
  try {
    if (key == "input") c.input = value;
    else if (key == "has_header") c.csv_has_header = as_bool(value);
    else if (key == "raster_data") c.raster_data = value;
    else if (key == "subsample_rows") c.subsample_rows = std::stoul(value);
    else if (key == "subsample_cols") c.subsample_cols = std::stoul(value);
    else if (key == "metric") c.metric = value;
    else if (key == "alpha") c.alpha = std::stod(value);
    else if (key == "index") {
      if (value == "exact") c.index = IndexChoice::exact;
      else if (value == "nn") c.index = IndexChoice::nn;
      else throw ConfigError("config key 'index': expected exact|nn, got '" + value + "'");
    }
    else if (key == "leaf_confidence") c.index_params.epsilon_conf = std::stod(value);
    else if (key == "sample_size") c.index_params.sample_size = std::stoul(value);
    else if (key == "leaf_occupancy") c.index_params.leaf_occupancy = std::stoul(value);
    else if (key == "epsilon") {
      if (value == "auto") c.epsilon.reset();
      else c.epsilon = std::stod(value);
    }
    else if (key == "pfa") c.p_fa = std::stod(value);
    else if (key == "k0") {
      if (value == "auto") c.k0.reset();
      else c.k0 = std::stoul(value);
    }
    else if (key == "refine") c.refine = as_bool(value);
    else if (key == "max_iter") c.max_iter = std::stoul(value);
    else if (key == "tol") c.tol = std::stod(value);
    else if (key == "keep_noise") c.keep_noise = as_bool(value);
    else if (key == "reference") c.reference_labels = value;
    else if (key == "out") c.out_dir = value;
    else if (key == "seed") c.seed = std::stoull(value);
    else if (key == "root") c.root = std::stoul(value);
    else throw ConfigError("unknown config key '" + key + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse value '" + value + "'");
  }
}

}  // namespace primclust

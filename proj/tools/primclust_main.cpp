#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "primclust/errors.hpp"
#include "primclust/mc.hpp"
#include "primclust/pipeline.hpp"

namespace {

// exit codes: 0 ok, 2 config error, 3 data error, 4 numeric/degenerate error
int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const primclust::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const primclust::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const primclust::DomainError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const primclust::ContractError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

struct ClusterFlags {
  std::string config_file;
  std::string epsilon = "";
  std::string k0 = "";
  std::string index = "";
  std::string refine = "";
  std::string keep_noise = "";
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MST-trajectory clustering with Poisson false-alarm control"};
  app.require_subcommand(1);

  // ---- cluster ----
  auto* cluster = app.add_subcommand("cluster", "run the clustering pipeline");
  primclust::PipelineConfig cfg;
  ClusterFlags flags;
  cluster->add_option("--config", flags.config_file, "key=value config file (flags win)");
  cluster->add_option("--input", cfg.input, "input CSV, or raster header with --raster-data");
  cluster->add_flag("--has-header", cfg.csv_has_header, "skip one CSV header line");
  cluster->add_option("--raster-data", cfg.raster_data, "raster data file (input is its header)");
  cluster->add_option("--subsample-rows", cfg.subsample_rows, "keep every r-th raster row");
  cluster->add_option("--subsample-cols", cfg.subsample_cols, "keep every c-th raster column");
  cluster->add_option("--metric", cfg.metric, "euclidean|sam|kl|renyi");
  cluster->add_option("--alpha", cfg.alpha, "renyi order in (0,1), default 0.5");
  cluster->add_option("--index", flags.index, "exact|nn");
  cluster->add_option("--leaf-confidence", cfg.index_params.epsilon_conf,
                      "median stopping tolerance");
  cluster->add_option("--sample-size", cfg.index_params.sample_size, "median sample budget R");
  cluster->add_option("--leaf-occupancy", cfg.index_params.leaf_occupancy,
                      "target points per cell M");
  cluster->add_option("--epsilon", flags.epsilon, "trajectory threshold, or 'auto'");
  cluster->add_option("--pfa", cfg.p_fa, "false-alarm probability");
  cluster->add_option("--k0", flags.k0, "minimum run length, or 'auto'");
  cluster->add_option("--refine", flags.refine, "on|off K-means refinement");
  cluster->add_option("--max-iter", cfg.max_iter, "K-means iteration cap");
  cluster->add_option("--tol", cfg.tol, "K-means objective tolerance");
  cluster->add_option("--keep-noise", flags.keep_noise, "on|off keep label -1 for noise");
  cluster->add_option("--reference", cfg.reference_labels, "reference label CSV for scoring");
  cluster->add_option("--out", cfg.out_dir, "output directory");
  cluster->add_option("--seed", cfg.seed, "random seed");
  cluster->add_option("--root", cfg.root, "Prim root vertex");

  // ---- nullsim ----
  auto* nullsim = app.add_subcommand("nullsim", "uniform-null Monte-Carlo comparison");
  std::size_t ns_n = 128, ns_dim = 2, ns_trials = 200, ns_steps = 10;
  double ns_eps_min = 0.0, ns_eps_max = 0.0, ns_pfa = 0.01;
  std::uint64_t ns_seed = 0;
  std::string ns_out = "nullsim.csv";
  nullsim->add_option("--n", ns_n, "points per trial")->required();
  nullsim->add_option("--dim", ns_dim, "dimension L");
  nullsim->add_option("--trials", ns_trials, "trial count");
  nullsim->add_option("--eps-min", ns_eps_min, "grid start")->required();
  nullsim->add_option("--eps-max", ns_eps_max, "grid end")->required();
  nullsim->add_option("--eps-steps", ns_steps, "grid size");
  nullsim->add_option("--pfa", ns_pfa, "false-alarm probability for the k0 column");
  nullsim->add_option("--seed", ns_seed, "master seed");
  nullsim->add_option("--out", ns_out, "output CSV path");

  // ---- validate ----
  auto* validate = app.add_subcommand("validate", "check a configuration and exit");
  std::string val_config;
  primclust::PipelineConfig val_cfg;
  ClusterFlags val_flags;
  validate->add_option("--config", val_config, "key=value config file");
  validate->add_option("--input", val_cfg.input, "input file");
  validate->add_option("--metric", val_cfg.metric, "euclidean|sam|kl|renyi");
  validate->add_option("--alpha", val_cfg.alpha, "renyi order");
  validate->add_option("--pfa", val_cfg.p_fa, "false-alarm probability");
  validate->add_option("--epsilon", val_flags.epsilon, "threshold or 'auto'");
  validate->add_option("--k0", val_flags.k0, "run length or 'auto'");
  validate->add_option("--out", val_cfg.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  auto merge_flags = [](primclust::PipelineConfig& c, const ClusterFlags& f,
                        const CLI::App* sub) {
    if (!f.config_file.empty()) {
      // file values form the base; options given on the command line win.
      // CLI11 parsed straight into the original struct, so swap and copy back
      // whatever the user actually passed.
      primclust::PipelineConfig file_cfg = primclust::config_from_file(f.config_file);
      std::swap(c, file_cfg);
      if (sub->count("--input")) c.input = file_cfg.input;
      if (sub->count("--has-header")) c.csv_has_header = file_cfg.csv_has_header;
      if (sub->count("--raster-data")) c.raster_data = file_cfg.raster_data;
      if (sub->count("--subsample-rows")) c.subsample_rows = file_cfg.subsample_rows;
      if (sub->count("--subsample-cols")) c.subsample_cols = file_cfg.subsample_cols;
      if (sub->count("--metric")) c.metric = file_cfg.metric;
      if (sub->count("--alpha")) c.alpha = file_cfg.alpha;
      if (sub->count("--leaf-confidence"))
        c.index_params.epsilon_conf = file_cfg.index_params.epsilon_conf;
      if (sub->count("--sample-size"))
        c.index_params.sample_size = file_cfg.index_params.sample_size;
      if (sub->count("--leaf-occupancy"))
        c.index_params.leaf_occupancy = file_cfg.index_params.leaf_occupancy;
      if (sub->count("--pfa")) c.p_fa = file_cfg.p_fa;
      if (sub->count("--max-iter")) c.max_iter = file_cfg.max_iter;
      if (sub->count("--tol")) c.tol = file_cfg.tol;
      if (sub->count("--reference")) c.reference_labels = file_cfg.reference_labels;
      if (sub->count("--out")) c.out_dir = file_cfg.out_dir;
      if (sub->count("--seed")) c.seed = file_cfg.seed;
      if (sub->count("--root")) c.root = file_cfg.root;
    }
    if (!f.index.empty()) primclust::apply_config_entry(c, "index", f.index);
    if (!f.epsilon.empty()) primclust::apply_config_entry(c, "epsilon", f.epsilon);
    if (!f.k0.empty()) primclust::apply_config_entry(c, "k0", f.k0);
    if (!f.refine.empty()) primclust::apply_config_entry(c, "refine", f.refine);
    if (!f.keep_noise.empty()) primclust::apply_config_entry(c, "keep_noise", f.keep_noise);
  };

  if (cluster->parsed()) {
    return run_guarded([&] {
      merge_flags(cfg, flags, cluster);
      auto res = primclust::run(cfg);
      std::cout << "n=" << res.n_points << " K_seed=" << res.k_seed
                << " K=" << res.k_final << " epsilon=" << res.epsilon
                << " k0=" << res.k0 << " noise=" << res.noise_count
                << " distance_evals=" << res.distance_evaluations;
      if (res.score >= 0.0) std::cout << " score=" << res.score;
      if (res.db_index >= 0.0) std::cout << " db=" << res.db_index;
      std::cout << "\nartifacts in " << cfg.out_dir << "\n";
      return 0;
    });
  }

  if (nullsim->parsed()) {
    return run_guarded([&] {
      if (!(ns_eps_max > ns_eps_min) || ns_steps < 1)
        throw primclust::ConfigError("nullsim: need eps-max > eps-min and eps-steps >= 1");
      std::vector<double> grid;
      for (std::size_t i = 0; i < ns_steps; ++i)
        grid.push_back(ns_eps_min + (ns_eps_max - ns_eps_min) * static_cast<double>(i) /
                                        static_cast<double>(std::max<std::size_t>(1, ns_steps - 1)));
      auto res = primclust::run_null_trials(ns_n, ns_dim, grid, ns_trials, ns_seed, ns_pfa);
      primclust::write_null_csv(res, ns_out);
      std::cout << "wrote " << ns_out << " (" << res.trials << " trials, generator "
                << res.generator << ", seed " << res.seed << ")\n";
      return 0;
    });
  }

  // validate
  return run_guarded([&] {
    if (!val_config.empty()) {
      primclust::PipelineConfig file_cfg = primclust::config_from_file(val_config);
      if (!validate->count("--input")) val_cfg.input = file_cfg.input;
      if (!validate->count("--metric")) val_cfg.metric = file_cfg.metric;
      if (!validate->count("--alpha")) val_cfg.alpha = file_cfg.alpha;
      if (!validate->count("--pfa")) val_cfg.p_fa = file_cfg.p_fa;
      if (!validate->count("--out")) val_cfg.out_dir = file_cfg.out_dir;
      if (val_flags.epsilon.empty() && file_cfg.epsilon) val_cfg.epsilon = file_cfg.epsilon;
      if (val_flags.k0.empty() && file_cfg.k0) val_cfg.k0 = file_cfg.k0;
    }
    if (!val_flags.epsilon.empty())
      primclust::apply_config_entry(val_cfg, "epsilon", val_flags.epsilon);
    if (!val_flags.k0.empty()) primclust::apply_config_entry(val_cfg, "k0", val_flags.k0);
    auto diags = primclust::validate_config(val_cfg);
    for (const auto& d : diags) std::cout << d.field << ": " << d.message << "\n";
    if (diags.empty()) {
      std::cout << "configuration ok\n";
      return 0;
    }
    return 2;
  });
}

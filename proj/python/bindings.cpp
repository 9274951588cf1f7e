#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "primclust/io.hpp"
#include "primclust/kmeans.hpp"
#include "primclust/mc.hpp"
#include "primclust/metrics.hpp"
#include "primclust/mode_extract.hpp"
#include "primclust/nn_index.hpp"
#include "primclust/pipeline.hpp"
#include "primclust/poisson.hpp"
#include "primclust/prim.hpp"
#include "primclust/validity.hpp"

namespace py = pybind11;
using namespace primclust;

namespace {

MetricKind metric_from(const std::string& name, double alpha) {
  return parse_metric(name, alpha);
}

std::vector<std::vector<double>> matrix_to_rows(const DissimilarityMatrix& m) {
  std::vector<std::vector<double>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

DissimilarityMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  DissimilarityMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw ContractError("matrix rows must form a square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

py::dict descriptor_to_dict(const PrimDescriptor& d) {
  py::list steps;
  for (const auto& s : d.steps)
    steps.append(py::make_tuple(s.iteration, s.vertex, s.parent, s.length));
  py::dict out;
  out["root"] = d.root;
  out["steps"] = steps;
  out["trajectory"] = trajectory(d);
  out["total_length"] = summarize(d).total_length;
  return out;
}

}  // namespace

PYBIND11_MODULE(_primclust, m) {
  m.doc() = "MST-trajectory clustering with Poisson false-alarm control";
  m.attr("__version__") = "0.1.0";

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](const std::vector<std::vector<double>>& rows) {
             return Dataset::from_rows(rows, "python");
           }),
           py::arg("rows"))
      .def("__len__", &Dataset::size)
      .def_property_readonly("dim", &Dataset::dim)
      .def("row", [](const Dataset& d, std::size_t i) {
        auto r = d.row(i);
        return std::vector<double>(r.begin(), r.end());
      });

  m.def("load_csv", &load_csv, py::arg("path"), py::arg("has_header") = false);
  m.def("load_raster", &load_raster, py::arg("header_path"), py::arg("data_path"));

  m.def(
      "normalize",
      [](const std::vector<double>& x) { return normalize({x.data(), x.size()}); },
      py::arg("x"));
  m.def(
      "distance",
      [](const std::vector<double>& x, const std::vector<double>& y,
         const std::string& metric, double alpha) {
        return distance({x.data(), x.size()}, {y.data(), y.size()},
                        metric_from(metric, alpha));
      },
      py::arg("x"), py::arg("y"), py::arg("metric") = "euclidean", py::arg("alpha") = 0.5);
  m.def(
      "pairwise_matrix",
      [](const Dataset& d, const std::string& metric, double alpha) {
        return matrix_to_rows(pairwise_matrix(d, metric_from(metric, alpha)));
      },
      py::arg("dataset"), py::arg("metric") = "euclidean", py::arg("alpha") = 0.5);

  m.def(
      "prim",
      [](const std::vector<std::vector<double>>& matrix, std::size_t root) {
        return descriptor_to_dict(prim(matrix_from_rows(matrix), root));
      },
      py::arg("matrix"), py::arg("root") = 0);
  m.def(
      "mst",
      [](const Dataset& d, const std::string& metric, double alpha, std::size_t root) {
        return descriptor_to_dict(prim(pairwise_matrix(d, metric_from(metric, alpha)), root));
      },
      py::arg("dataset"), py::arg("metric") = "euclidean", py::arg("alpha") = 0.5,
      py::arg("root") = 0);
  m.def(
      "nn_mst",
      [](const Dataset& d, const std::string& metric, double alpha, double leaf_confidence,
         std::size_t leaf_occupancy, std::size_t sample_size, std::uint64_t seed,
         std::size_t root) {
        IndexParams p{leaf_confidence, sample_size, leaf_occupancy, seed};
        auto res = nn_mst(d, metric_from(metric, alpha), p, root);
        auto out = descriptor_to_dict(res.descriptor);
        out["distance_evaluations"] = res.distance_evaluations;
        return out;
      },
      py::arg("dataset"), py::arg("metric") = "euclidean", py::arg("alpha") = 0.5,
      py::arg("leaf_confidence") = 0.05, py::arg("leaf_occupancy") = 32,
      py::arg("sample_size") = 4096, py::arg("seed") = 0, py::arg("root") = 0);

  m.def("min_leaf_size", &min_leaf_size, py::arg("dim"), py::arg("epsilon_conf"));
  m.def("unit_ball_volume", &unit_ball_volume, py::arg("dim"));
  m.def("connection_cdf", &connection_cdf, py::arg("epsilon"), py::arg("lam"), py::arg("dim"));
  m.def(
      "false_alarm_probability",
      [](std::size_t k0, double epsilon, double lam, std::size_t dim, std::size_t n) {
        DetectionParams p;
        p.dim = dim;
        p.n_points = n;
        p.lambda = lam;
        return false_alarm_probability(k0, epsilon, p);
      },
      py::arg("k0"), py::arg("epsilon"), py::arg("lam"), py::arg("dim"), py::arg("n") = 2);
  m.def(
      "min_run_length",
      [](double p_fa, double epsilon, double lam, std::size_t dim, std::size_t n) {
        DetectionParams p;
        p.dim = dim;
        p.n_points = n;
        p.lambda = lam;
        return min_run_length(p_fa, epsilon, p);
      },
      py::arg("p_fa"), py::arg("epsilon"), py::arg("lam"), py::arg("dim"), py::arg("n"));
  m.def(
      "expected_false_cluster_size",
      [](double epsilon, double lam, std::size_t dim) {
        DetectionParams p;
        p.dim = dim;
        p.n_points = 2;
        p.lambda = lam;
        return expected_false_cluster_size(epsilon, p);
      },
      py::arg("epsilon"), py::arg("lam"), py::arg("dim"));
  m.def(
      "default_threshold",
      [](const std::vector<double>& g) { return default_threshold({g.data(), g.size()}); },
      py::arg("trajectory"));

  m.def(
      "cluster",
      [](const Dataset& d, const std::string& metric, double alpha,
         std::optional<double> epsilon, double p_fa, std::optional<std::size_t> k0,
         bool refine, std::size_t max_iter, std::uint64_t seed, const std::string& index) {
        MetricKind mk = metric_from(metric, alpha);
        PrimDescriptor desc;
        if (index == "nn") {
          IndexParams ip;
          ip.seed = seed;
          desc = nn_mst(d, mk, ip).descriptor;
        } else {
          desc = prim(pairwise_matrix(d, mk), 0);
        }
        auto g = trajectory(desc);
        DetectionParams params = DetectionParams::from_support(
            d.dim(), d.size(), estimate_support_volume(d, mk, seed));
        params.epsilon = epsilon ? *epsilon : default_threshold({g.data(), g.size()});
        params.p_fa = p_fa;
        params.k0 = k0 ? *k0 : min_run_length(p_fa, params.epsilon, params);
        SeedClusters seeds = extract(desc, params, d, mk);
        py::dict out;
        out["k_seed"] = seeds.k;
        out["epsilon"] = params.epsilon;
        out["k0"] = params.k0;
        out["noise_count"] = seeds.noise.size();
        if (refine && seeds.k >= 1) {
          ClusterModel model = lloyd(d, seeds, mk, max_iter);
          out["k"] = model.k;
          out["labels"] = model.labels;
          out["centroids"] = model.centroids;
          out["objective"] = model.objective;
          out["iterations"] = model.iterations;
        } else {
          std::vector<int> labels(d.size(), -1);
          for (std::size_t j = 0; j < seeds.k; ++j)
            for (std::size_t v : seeds.members[j]) labels[v] = static_cast<int>(j);
          out["k"] = seeds.k;
          out["labels"] = labels;
          out["centroids"] = seeds.centroids;
        }
        return out;
      },
      py::arg("dataset"), py::arg("metric") = "euclidean", py::arg("alpha") = 0.5,
      py::arg("epsilon") = std::nullopt, py::arg("p_fa") = 0.01,
      py::arg("k0") = std::nullopt, py::arg("refine") = true, py::arg("max_iter") = 100,
      py::arg("seed") = 0, py::arg("index") = "exact");

  m.def(
      "lloyd",
      [](const Dataset& d, const std::vector<std::vector<double>>& centroids,
         const std::string& metric, double alpha, std::size_t max_iter, double tol) {
        SeedClusters init;
        init.k = centroids.size();
        init.centroids = centroids;
        ClusterModel model = lloyd(d, init, metric_from(metric, alpha), max_iter, tol);
        py::dict out;
        out["labels"] = model.labels;
        out["centroids"] = model.centroids;
        out["objective"] = model.objective;
        out["iterations"] = model.iterations;
        out["converged"] = model.converged;
        return out;
      },
      py::arg("dataset"), py::arg("centroids"), py::arg("metric") = "euclidean",
      py::arg("alpha") = 0.5, py::arg("max_iter") = 100, py::arg("tol") = -1.0);

  m.def(
      "davies_bouldin",
      [](const Dataset& d, const std::vector<int>& labels,
         const std::vector<std::vector<double>>& centroids, const std::string& metric,
         double alpha) {
        ClusterModel model;
        model.k = centroids.size();
        model.labels = labels;
        model.centroids = centroids;
        return davies_bouldin(d, model, metric_from(metric, alpha));
      },
      py::arg("dataset"), py::arg("labels"), py::arg("centroids"),
      py::arg("metric") = "euclidean", py::arg("alpha") = 0.5);
  m.def(
      "overlap_score",
      [](const std::vector<int>& labels, const std::vector<int>& reference) {
        auto rep = overlap_score(labels, reference);
        return py::make_tuple(rep.score, rep.confusion);
      },
      py::arg("labels"), py::arg("reference"));

  m.def(
      "run_null_trials",
      [](std::size_t n, std::size_t dim, const std::vector<double>& eps_grid,
         std::size_t trials, std::uint64_t seed, double p_fa) {
        auto r = run_null_trials(n, dim, eps_grid, trials, seed, p_fa);
        py::dict out;
        out["eps"] = r.eps_grid;
        out["k0_theory"] = r.k0_theory;
        out["mean_size_emp"] = r.mean_size_emp;
        out["std_size_emp"] = r.std_size_emp;
        out["size_theory"] = r.size_theory;
        out["sample_count"] = r.sample_count;
        out["lambda"] = r.lambda_mean;
        out["generator"] = r.generator;
        return out;
      },
      py::arg("n"), py::arg("dim"), py::arg("eps_grid"), py::arg("trials"),
      py::arg("seed") = 0, py::arg("p_fa") = 0.01);
}

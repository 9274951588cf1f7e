#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "oracles.hpp"
#include "primclust/errors.hpp"
#include "primclust/validity.hpp"

using namespace primclust;

namespace {

ClusterModel model_of(std::vector<int> labels, std::vector<std::vector<double>> cents) {
  ClusterModel m;
  m.k = cents.size();
  m.labels = std::move(labels);
  m.centroids = std::move(cents);
  return m;
}

}  // namespace

TEST_CASE("davies bouldin hand example") {
  auto d = Dataset::from_rows({{0, 0}, {0, 2}, {10, 0}, {10, 2}});
  auto m = model_of({0, 0, 1, 1}, {{0, 1}, {10, 1}});
  CHECK(davies_bouldin(d, m, MetricKind::euclidean()) == doctest::Approx(0.2).epsilon(1e-14));

  // shrinking the separation with fixed scatter doubles the index
  auto d5 = Dataset::from_rows({{0, 0}, {0, 2}, {5, 0}, {5, 2}});
  auto m5 = model_of({0, 0, 1, 1}, {{0, 1}, {5, 1}});
  CHECK(davies_bouldin(d5, m5, MetricKind::euclidean()) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("davies bouldin edge cases") {
  auto d = Dataset::from_rows({{0, 0}, {3, 4}});
  auto singletons = model_of({0, 1}, {{0, 0}, {3, 4}});
  CHECK(davies_bouldin(d, singletons, MetricKind::euclidean()) == 0.0);

  auto coincident = model_of({0, 1}, {{1, 1}, {1, 1}});
  CHECK_THROWS_AS(davies_bouldin(d, coincident, MetricKind::euclidean()), DegenerateError);

  auto one = model_of({0, 0}, {{1.5, 2}});
  CHECK_THROWS_AS(davies_bouldin(d, one, MetricKind::euclidean()), ContractError);
}

TEST_CASE("davies bouldin properties") {
  auto d = oracles::random_positive(24, 2, 12);
  std::vector<int> labels(24);
  for (std::size_t i = 0; i < 24; ++i) labels[i] = static_cast<int>(i % 3);
  std::vector<std::vector<std::size_t>> members(3);
  for (std::size_t i = 0; i < 24; ++i) members[i % 3].push_back(i);
  std::vector<std::vector<double>> cents;
  for (auto& mem : members) cents.push_back(centroid(mem, d, MetricKind::euclidean()));
  auto m = model_of(labels, cents);
  double base = davies_bouldin(d, m, MetricKind::euclidean());

  // permuting cluster indices leaves the index unchanged
  std::vector<int> permuted(24);
  for (std::size_t i = 0; i < 24; ++i) permuted[i] = (labels[i] + 1) % 3;
  auto mp = model_of(permuted, {cents[2], cents[0], cents[1]});
  CHECK(davies_bouldin(d, mp, MetricKind::euclidean()) == doctest::Approx(base).epsilon(1e-13));

  // euclidean scale invariance: scale every coordinate by c > 0
  std::vector<std::vector<double>> scaled_rows;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto r = d.row(i);
    scaled_rows.push_back({3.5 * r[0], 3.5 * r[1]});
  }
  auto ds = Dataset::from_rows(scaled_rows);
  std::vector<std::vector<double>> cents_s;
  for (auto& c : cents) cents_s.push_back({3.5 * c[0], 3.5 * c[1]});
  auto msc = model_of(labels, cents_s);
  CHECK(davies_bouldin(ds, msc, MetricKind::euclidean()) ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("davies bouldin against the naive oracle") {
  primclust::Rng rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t n = 8 + rng.index(23);   // 8..30
    std::size_t k = 2 + rng.index(3);    // 2..4
    auto d = oracles::random_positive(n, 1 + rng.index(3), 900 + rep);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i)
      labels[i] = static_cast<int>(i < k ? i : rng.index(k));  // no empty cluster
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < n; ++i)
      members[static_cast<std::size_t>(labels[i])].push_back(i);
    auto metric = rep % 2 ? MetricKind::euclidean() : MetricKind::kl();
    std::vector<std::vector<double>> cents;
    for (auto& mem : members) cents.push_back(centroid(mem, d, metric));
    auto m = model_of(labels, cents);
    CHECK(davies_bouldin(d, m, metric) ==
          doctest::Approx(oracles::naive_db(d, labels, cents, metric)).epsilon(1e-12));
  }
}

TEST_CASE("overlap score basics") {
  std::vector<int> ref{0, 0, 1, 1, 2, 2};
  auto perfect = overlap_score(ref, ref);
  CHECK(perfect.score == 1.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(perfect.confusion[i][j] == (i == j ? 2u : 0u));
  CHECK(perfect.per_class_scores == std::vector<double>{1, 1, 1});

  std::vector<int> constant(6, 0);
  std::vector<int> two{0, 0, 0, 1, 1, 1};
  CHECK(overlap_score(constant, two).score == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(overlap_score({0, 1}, {0, 1, 2}), ContractError);
}

TEST_CASE("table-2 style fraction") {
  // 976 of 1329 covered reproduces the reported 73.44%
  std::vector<int> ref(1329, 0);
  std::vector<int> labels(1329, -1);
  for (std::size_t i = 0; i < 976; ++i) labels[i] = 0;
  auto rep = overlap_score(labels, ref);
  CHECK(rep.score == doctest::Approx(976.0 / 1329.0).epsilon(1e-15));
  CHECK(rep.score == doctest::Approx(0.7344).epsilon(1e-4));
}

TEST_CASE("overlap score relabeling invariance and exhaustive count") {
  primclust::Rng rng(55);
  std::vector<int> labels(40), ref(40);
  for (auto& l : labels) l = static_cast<int>(rng.index(4));
  for (auto& r : ref) r = static_cast<int>(rng.index(3));
  auto base = overlap_score(labels, ref);

  // relabel both sides with fixed bijections
  std::vector<int> l2(40), r2(40);
  for (std::size_t i = 0; i < 40; ++i) {
    l2[i] = (labels[i] + 2) % 4 + 10;
    r2[i] = 5 - ref[i];
  }
  CHECK(overlap_score(l2, r2).score == doctest::Approx(base.score).epsilon(1e-15));

  // exhaustive counting oracle
  double covered = 0;
  for (int c = 0; c < 4; ++c) {
    std::size_t best = 0;
    for (int t = 0; t < 3; ++t) {
      std::size_t inter = 0;
      for (std::size_t i = 0; i < 40; ++i)
        if (labels[i] == c && ref[i] == t) ++inter;
      best = std::max(best, inter);
    }
    covered += static_cast<double>(best);
  }
  CHECK(base.score == doctest::Approx(covered / 40.0).epsilon(1e-15));
}

TEST_CASE("report files") {
  ValidityReport r;
  r.db_index = 0.5;
  r.score = 0.75;
  r.per_class_scores = {0.5, 1.0};
  r.confusion = {{3, 0}, {1, 4}};
  write_validity_json(r, "validity_test.json");
  write_confusion_csv(r, "confusion_test.csv");
  std::ifstream jf("validity_test.json");
  std::string all((std::istreambuf_iterator<char>(jf)), std::istreambuf_iterator<char>());
  CHECK(all.find("davies_bouldin") != std::string::npos);
  std::ifstream cf("confusion_test.csv");
  std::string line;
  std::getline(cf, line);
  CHECK(line == "3,0");
  std::remove("validity_test.json");
  std::remove("confusion_test.csv");
}

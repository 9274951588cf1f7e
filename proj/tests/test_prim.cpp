#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "primclust/errors.hpp"
#include "primclust/prim.hpp"

using namespace primclust;

namespace {

// every prefix of the step list must stay a tree fragment rooted at `root`
void check_descriptor_shape(const PrimDescriptor& d, std::size_t n) {
  CHECK(d.steps.size() == n - 1);
  std::set<std::size_t> connected{d.root};
  for (const auto& s : d.steps) {
    CHECK(connected.count(s.parent) == 1);   // parent joined earlier
    CHECK(connected.count(s.vertex) == 0);   // vertex is new
    connected.insert(s.vertex);
  }
  CHECK(connected.size() == n);
}

}  // namespace

TEST_CASE("four points on a line") {
  auto d = Dataset::from_rows({{0.0}, {1.0}, {3.0}, {7.0}});
  auto m = pairwise_matrix(d, MetricKind::euclidean());
  auto desc = prim(m, 0);
  CHECK(trajectory(desc) == std::vector<double>{1, 2, 4});
  CHECK(summarize(desc).total_length == doctest::Approx(7.0).epsilon(1e-15));
  check_descriptor_shape(desc, 4);

  // matches exhaustive enumeration over the 16 spanning trees of K4
  auto brute = oracles::brute_force_mst(m);
  CHECK(summarize(desc).total_length == brute.total);
  CHECK(summarize(desc).edge_lengths == brute.edge_lengths);

  // rooting elsewhere permutes the trajectory but not the edge multiset
  auto desc3 = prim(m, 3);
  CHECK(summarize(desc3).edge_lengths == std::vector<double>{1, 2, 4});
  check_descriptor_shape(desc3, 4);
}

TEST_CASE("two vertices") {
  DissimilarityMatrix m(2);
  m(0, 1) = m(1, 0) = 2.5;
  auto desc = prim(m, 0);
  CHECK(trajectory(desc) == std::vector<double>{2.5});
}

TEST_CASE("equilateral tie breaking") {
  DissimilarityMatrix m(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = i == j ? 0.0 : 1.0;
  auto desc = prim(m, 0);
  CHECK(trajectory(desc) == std::vector<double>{1, 1});
  CHECK(desc.steps[0].vertex == 1);  // smallest unconnected vertex first
  CHECK(desc.steps[1].vertex == 2);
  CHECK(desc.steps[0].parent == 0);
  CHECK(desc.steps[1].parent == 0);  // parent tie resolved to the smallest
}

TEST_CASE("contract checks") {
  DissimilarityMatrix bad(2);
  bad(0, 1) = 1.0;
  bad(1, 0) = 2.0;
  CHECK_THROWS_AS(prim(bad, 0), ContractError);

  DissimilarityMatrix inf_m(2);
  inf_m(0, 1) = inf_m(1, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(prim(inf_m, 0), ContractError);

  DissimilarityMatrix one(1);
  CHECK_THROWS_AS(prim(one, 0), ContractError);
}

TEST_CASE("exactness against brute force on random instances") {
  std::size_t case_id = 0;
  for (std::size_t dim : {1u, 2u, 5u}) {
    for (auto metric : {MetricKind::euclidean(), MetricKind::sam(), MetricKind::kl(),
                        MetricKind::renyi(0.5)}) {
      for (int rep = 0; rep < 3; ++rep) {
        std::size_t n = 4 + (case_id % 4);  // 4..7
        auto d = oracles::random_positive(n, dim, 1000 + case_id++);
        auto m = pairwise_matrix(d, metric);
        auto mine = summarize(prim(m, case_id % n));
        auto brute = oracles::brute_force_mst(m);
        CHECK(mine.total_length == brute.total);
        CHECK(mine.edge_lengths == brute.edge_lengths);
      }
    }
  }
}

TEST_CASE("edge multiset is root independent under distinct weights") {
  auto d = oracles::random_positive(9, 3, 77);
  auto m = pairwise_matrix(d, MetricKind::euclidean());
  auto base = summarize(prim(m, 0)).edge_lengths;
  for (std::size_t root = 1; root < 9; ++root) {
    auto desc = prim(m, root);
    check_descriptor_shape(desc, 9);
    CHECK(summarize(desc).edge_lengths == base);
  }
}

#ifndef PRIMCLUST_METRICS_HPP
#define PRIMCLUST_METRICS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "primclust/dataset.hpp"

namespace primclust {

enum class MetricTag { euclidean, sam, kullback_leibler_sym, renyi_sym };

struct MetricKind {
  MetricTag tag = MetricTag::euclidean;
  double alpha = 0.5;  // only meaningful for renyi_sym, in (0,1)

  static MetricKind euclidean() { return {MetricTag::euclidean, 0.5}; }
  static MetricKind sam() { return {MetricTag::sam, 0.5}; }
  static MetricKind kl() { return {MetricTag::kullback_leibler_sym, 0.5}; }
  static MetricKind renyi(double alpha = 0.5) { return {MetricTag::renyi_sym, alpha}; }

  bool is_divergence() const {
    return tag == MetricTag::kullback_leibler_sym || tag == MetricTag::renyi_sym;
  }
  // divergence and SAM kinds require nonnegative data with positive sum
  bool needs_positive_data() const { return tag != MetricTag::euclidean; }
};

// "euclidean" | "sam" | "kl" | "renyi"
MetricKind parse_metric(const std::string& name, double alpha = 0.5);
std::string metric_name(const MetricKind& m);

// x / sum(x); throws DomainError (naming index_for_error) on a negative
// component or a zero sum.
std::vector<double> normalize(std::span<const double> x,
                              std::size_t index_for_error = 0);

// Symmetric dissimilarity between two vectors.  For the symmetrized
// divergences the result can be +infinity when supports are disjoint at some
// coordinate; pairwise_matrix replaces those entries (see below).
double distance(std::span<const double> x, std::span<const double> y,
                const MetricKind& m);

// Dense symmetric matrix with zero diagonal.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;
  explicit DissimilarityMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// All pairwise distances.  Infinite divergences are replaced by
// (1 + max finite entry) so downstream tree construction stays well-defined
// while ranking such pairs as most dissimilar.
DissimilarityMatrix pairwise_matrix(const Dataset& d, const MetricKind& m);

}  // namespace primclust

#endif

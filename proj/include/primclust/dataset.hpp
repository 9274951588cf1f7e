#ifndef PRIMCLUST_DATASET_HPP
#define PRIMCLUST_DATASET_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primclust/errors.hpp"

namespace primclust {

struct RasterShape {
  std::size_t width = 0;
  std::size_t height = 0;
};

// One data point: L values plus its index in the dataset.
struct FeatureVector {
  std::size_t index = 0;
  std::vector<double> values;
};

// Immutable after load; rows stored contiguously, indices are row order.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<double> values, std::size_t dim, std::string source,
          std::optional<RasterShape> raster = std::nullopt);

  static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                           std::string source = "memory");

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  const std::string& source() const { return source_; }
  const std::optional<RasterShape>& raster() const { return raster_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  FeatureVector point(std::size_t i) const {
    auto r = row(i);
    return {i, std::vector<double>(r.begin(), r.end())};
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;  // row-major n_ x dim_
  std::string source_;
  std::optional<RasterShape> raster_;
};

}  // namespace primclust

#endif

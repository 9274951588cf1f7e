#include "primclust/dataset.hpp"

namespace primclust {

Dataset::Dataset(std::vector<double> values, std::size_t dim, std::string source,
                 std::optional<RasterShape> raster)
    : dim_(dim), values_(std::move(values)), source_(std::move(source)),
      raster_(raster) {
  if (dim_ == 0) throw ContractError("Dataset: dimension must be positive");
  if (values_.size() % dim_ != 0)
    throw ContractError("Dataset: value count not a multiple of the dimension");
  n_ = values_.size() / dim_;
  if (raster_ && raster_->width * raster_->height != n_)
    throw ContractError("Dataset: raster shape does not match point count");
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows,
                           std::string source) {
  if (rows.empty()) throw DataError("insufficient data: empty point set");
  const std::size_t dim = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim)
      throw DataError("row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " columns, expected " +
                      std::to_string(dim));
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return Dataset(std::move(values), dim, std::move(source));
}

}  // namespace primclust

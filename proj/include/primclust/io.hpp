#ifndef PRIMCLUST_IO_HPP
#define PRIMCLUST_IO_HPP

#include <string>
#include <vector>

#include "primclust/dataset.hpp"

namespace primclust {

// Comma-separated numeric rows, optional single header line, LF or CRLF.
Dataset load_csv(const std::string& path, bool has_header = false);

// Band-sequential raster with a plain-text key=value sidecar header
// (width, height, bands, dtype in {u8,u16le,f32le}, interleave=bsq).
// Points are pixels in row-major order; each point is the L-band spectrum.
Dataset load_raster(const std::string& header_path, const std::string& data_path);

// Keeps pixels whose (row % row_step, col % col_step) are both zero.
// Non-raster datasets only support col_step == 1.
Dataset subsample(const Dataset& d, std::size_t row_step, std::size_t col_step);

// "index,label" CSV; raster datasets additionally emit one 0/255 byte mask
// per nonnegative label, named <path-stem>_mask<label>.u8.
// Returns the list of files written.
std::vector<std::string> export_labels(const Dataset& d, const std::vector<int>& labels,
                                       const std::string& path);

// Reads a label CSV written by export_labels (or any "index,label" file).
std::vector<int> load_labels(const std::string& path);

}  // namespace primclust

#endif

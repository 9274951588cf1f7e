#include "primclust/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace primclust {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col_no) {
  std::string t = cell;
  // trim
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  if (t.empty())
    throw DataError("blank cell at row " + std::to_string(line_no) + ", column " +
                    std::to_string(col_no));
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v))
    throw DataError("cannot parse '" + t + "' as a finite number at row " +
                    std::to_string(line_no) + ", column " + std::to_string(col_no));
  return v;
}

}  // namespace

Dataset load_csv(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string line;
  std::vector<double> values;
  std::size_t dim = 0, n = 0, line_no = 0;
  bool skipped_header = !has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    auto cells = split_csv_line(line);
    if (dim == 0) {
      dim = cells.size();
    } else if (cells.size() != dim) {
      throw DataError("row " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " columns, expected " +
                      std::to_string(dim));
    }
    for (std::size_t c = 0; c < cells.size(); ++c)
      values.push_back(parse_cell(cells[c], line_no, c + 1));
    ++n;
  }
  if (n < 2)
    throw DataError("insufficient data: '" + path + "' holds " + std::to_string(n) +
                    " point(s), need at least 2");
  return Dataset(std::move(values), dim, path);
}

namespace {

struct RasterHeader {
  std::size_t width = 0, height = 0, bands = 0;
  std::string dtype;
};

RasterHeader parse_raster_header(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open raster header '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("raster header '" + path + "': expected key=value, got '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto need = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw DataError("raster header '" + path + "' is missing '" + key + "'");
    return it->second;
  };
  RasterHeader h;
  h.width = std::stoul(need("width"));
  h.height = std::stoul(need("height"));
  h.bands = std::stoul(need("bands"));
  h.dtype = need("dtype");
  if (need("interleave") != "bsq")
    throw DataError("raster header '" + path + "': only interleave=bsq is supported");
  if (h.dtype != "u8" && h.dtype != "u16le" && h.dtype != "f32le")
    throw DataError("raster header '" + path + "': dtype must be u8, u16le or f32le");
  if (h.width == 0 || h.height == 0 || h.bands == 0)
    throw DataError("raster header '" + path + "': width, height and bands must be positive");
  return h;
}

}  // namespace

Dataset load_raster(const std::string& header_path, const std::string& data_path) {
  RasterHeader h = parse_raster_header(header_path);
  const std::size_t sample_size = h.dtype == "u8" ? 1 : (h.dtype == "u16le" ? 2 : 4);
  const std::size_t n_samples = h.width * h.height * h.bands;
  const std::size_t expected_bytes = n_samples * sample_size;

  std::ifstream in(data_path, std::ios::binary);
  if (!in) throw DataError("cannot open raster data '" + data_path + "'");
  std::vector<char> raw((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
  if (raw.size() != expected_bytes)
    throw DataError("raster size mismatch for '" + data_path + "': expected " +
                    std::to_string(expected_bytes) + " bytes, got " +
                    std::to_string(raw.size()));

  std::vector<double> samples(n_samples);
  if (h.dtype == "u8") {
    for (std::size_t i = 0; i < n_samples; ++i)
      samples[i] = static_cast<double>(static_cast<std::uint8_t>(raw[i]));
  } else if (h.dtype == "u16le") {
    for (std::size_t i = 0; i < n_samples; ++i) {
      auto lo = static_cast<std::uint16_t>(static_cast<std::uint8_t>(raw[2 * i]));
      auto hi = static_cast<std::uint16_t>(static_cast<std::uint8_t>(raw[2 * i + 1]));
      samples[i] = static_cast<double>(lo | (hi << 8));
    }
  } else {
    for (std::size_t i = 0; i < n_samples; ++i) {
      float f;
      std::memcpy(&f, raw.data() + 4 * i, 4);
      samples[i] = static_cast<double>(f);
    }
  }

  // BSQ on disk -> per-pixel spectra in memory
  const std::size_t n = h.width * h.height;
  std::vector<double> values(n * h.bands);
  for (std::size_t b = 0; b < h.bands; ++b)
    for (std::size_t p = 0; p < n; ++p)
      values[p * h.bands + b] = samples[b * n + p];
  return Dataset(std::move(values), h.bands, data_path,
                 RasterShape{h.width, h.height});
}

Dataset subsample(const Dataset& d, std::size_t row_step, std::size_t col_step) {
  if (row_step < 1 || col_step < 1)
    throw ContractError("subsample: steps must be >= 1");
  if (!d.raster()) {
    if (col_step > 1)
      throw DataError("subsample: column step needs a raster dataset");
    if (row_step == 1) return d;
    std::vector<double> values;
    for (std::size_t i = 0; i < d.size(); i += row_step) {
      auto r = d.row(i);
      values.insert(values.end(), r.begin(), r.end());
    }
    return Dataset(std::move(values), d.dim(), d.source() + "#sub");
  }
  const auto shape = *d.raster();
  if (row_step == 1 && col_step == 1) return d;
  std::vector<double> values;
  std::size_t new_h = 0;
  std::size_t new_w = (shape.width + col_step - 1) / col_step;
  for (std::size_t r = 0; r < shape.height; r += row_step) {
    ++new_h;
    for (std::size_t c = 0; c < shape.width; c += col_step) {
      auto row = d.row(r * shape.width + c);
      values.insert(values.end(), row.begin(), row.end());
    }
  }
  return Dataset(std::move(values), d.dim(), d.source() + "#sub",
                 RasterShape{new_w, new_h});
}

std::vector<std::string> export_labels(const Dataset& d, const std::vector<int>& labels,
                                       const std::string& path) {
  if (labels.size() != d.size())
    throw ContractError("export_labels: " + std::to_string(labels.size()) +
                        " labels for " + std::to_string(d.size()) + " points");
  std::vector<std::string> written;
  {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "index,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
      out << i << ',' << labels[i] << '\n';
  }
  written.push_back(path);

  if (d.raster()) {
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    std::filesystem::path p(path);
    std::string stem = (p.parent_path() / p.stem()).string();
    for (int l = 0; l <= max_label; ++l) {
      std::string mask_path = stem + "_mask" + std::to_string(l) + ".u8";
      std::ofstream out(mask_path, std::ios::binary);
      if (!out) throw DataError("cannot write '" + mask_path + "'");
      for (int lab : labels)
        out.put(lab == l ? static_cast<char>(0xff) : static_cast<char>(0));
      written.push_back(mask_path);
    }
  }
  return written;
}

std::vector<int> load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string line;
  std::vector<std::pair<long, int>> rows;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line.rfind("index,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DataError("label file '" + path + "': row " + std::to_string(line_no) +
                      " is not index,label");
    try {
      rows.emplace_back(std::stol(line.substr(0, comma)),
                        std::stoi(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw DataError("label file '" + path + "': cannot parse row " +
                      std::to_string(line_no));
    }
  }
  std::sort(rows.begin(), rows.end());
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (auto& [idx, lab] : rows) {
    if (idx != static_cast<long>(labels.size()))
      throw DataError("label file '" + path + "': indices are not 0..N-1");
    labels.push_back(lab);
  }
  return labels;
}

}  // namespace primclust

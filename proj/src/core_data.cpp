#include "spatialcv/core_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace spatialcv {

double spatial_distance(const Coord& a, const Coord& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

namespace {

bool is_integral_label(double v) {
  return v >= 0.0 && std::floor(v) == v;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_cell(const std::string& text, int row, const std::string& column) {
  std::string t = text;
  // trim surrounding spaces
  const auto b = t.find_first_not_of(" \t");
  const auto e = t.find_last_not_of(" \t");
  t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || t.empty()) {
    throw DataError("row " + std::to_string(row) + ", column '" + column +
                    "': cannot parse '" + text + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw DataError("row " + std::to_string(row) + ", column '" + column +
                    "': value '" + text + "' is not finite");
  }
  return value;
}

}  // namespace

GeoDataset make_dataset(std::vector<PointRecord> records,
                        std::vector<std::string> feature_names,
                        ResponseKind kind, std::string crs_note) {
  if (records.empty()) {
    throw DataError("dataset must contain at least one record");
  }
  const std::size_t n = records.front().features.size();
  if (feature_names.size() != n) {
    throw DataError("feature name count does not match feature dimension");
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    r.id = static_cast<int>(i);
    if (r.features.size() != n) {
      throw DataError("record " + std::to_string(i) + " has feature dimension " +
                      std::to_string(r.features.size()) + ", expected " + std::to_string(n));
    }
    if (!std::isfinite(r.coord[0]) || !std::isfinite(r.coord[1])) {
      throw DataError("record " + std::to_string(i) + " has non-finite coordinates");
    }
    if (!std::isfinite(r.response)) {
      throw DataError("record " + std::to_string(i) + " has non-finite response");
    }
    for (double f : r.features) {
      if (!std::isfinite(f)) {
        throw DataError("record " + std::to_string(i) + " has non-finite feature value");
      }
    }
    if (kind == ResponseKind::categorical && !is_integral_label(r.response)) {
      throw DataError("record " + std::to_string(i) +
                      ": categorical response must be a non-negative integer label");
    }
  }
  GeoDataset ds;
  ds.records = std::move(records);
  ds.feature_names = std::move(feature_names);
  ds.response_kind = kind;
  ds.crs_note = std::move(crs_note);
  return ds;
}

GeoDataset load_csv(const std::string& path, const ColumnSchema& schema) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("'" + path + "' is empty");
  }
  const std::vector<std::string> header = split_line(line);

  auto column_index = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw DataError("schema column '" + name + "' not found in header of '" + path + "'");
    }
    return static_cast<int>(it - header.begin());
  };

  const int east = column_index(schema.east);
  const int north = column_index(schema.north);
  const int response = column_index(schema.response);

  std::vector<std::string> feature_names = schema.features;
  if (feature_names.empty()) {
    for (const auto& name : header) {
      if (name != schema.east && name != schema.north && name != schema.response) {
        feature_names.push_back(name);
      }
    }
  }
  std::vector<int> feature_cols;
  feature_cols.reserve(feature_names.size());
  for (const auto& name : feature_names) {
    feature_cols.push_back(column_index(name));
  }

  std::vector<PointRecord> records;
  int row = 1;  // header is row 0
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") {
      ++row;
      continue;
    }
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size()) {
      throw DataError("row " + std::to_string(row) + ": expected " +
                      std::to_string(header.size()) + " columns, found " +
                      std::to_string(cells.size()));
    }
    PointRecord r;
    r.coord = {parse_cell(cells[east], row, schema.east),
               parse_cell(cells[north], row, schema.north)};
    r.response = parse_cell(cells[response], row, schema.response);
    r.features.reserve(feature_cols.size());
    for (std::size_t f = 0; f < feature_cols.size(); ++f) {
      r.features.push_back(parse_cell(cells[feature_cols[f]], row, feature_names[f]));
    }
    records.push_back(std::move(r));
    ++row;
  }
  if (records.empty()) {
    throw DataError("'" + path + "' contains no data rows");
  }
  return make_dataset(std::move(records), std::move(feature_names), schema.response_kind);
}

namespace {

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

void write_csv(const GeoDataset& ds, const std::string& path, const ColumnSchema& schema) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path + "'");
  }
  out << schema.east << ',' << schema.north << ',' << schema.response;
  for (const auto& name : ds.feature_names) {
    out << ',' << name;
  }
  out << '\n';
  for (const auto& r : ds.records) {
    out << format_number(r.coord[0]) << ',' << format_number(r.coord[1]) << ','
        << format_number(r.response);
    for (double f : r.features) {
      out << ',' << format_number(f);
    }
    out << '\n';
  }
}

GeoDataset subsample_density(const GeoDataset& ds, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw std::invalid_argument("density fraction must lie in (0, 1], got " +
                                std::to_string(fraction));
  }
  const int m = ds.size();
  const int keep = static_cast<int>(std::ceil(fraction * m));

  std::vector<int> ids(m);
  std::iota(ids.begin(), ids.end(), 0);
  Rng rng(seed);
  // Partial Fisher-Yates: the first `keep` slots form the sample.
  for (int i = 0; i < keep; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - i)));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(keep);
  std::sort(ids.begin(), ids.end());

  GeoDataset out;
  out.feature_names = ds.feature_names;
  out.response_kind = ds.response_kind;
  out.crs_note = ds.crs_note;
  out.records.reserve(keep);
  out.source_ids.reserve(keep);
  for (int i = 0; i < keep; ++i) {
    PointRecord r = ds.records[ids[i]];
    const int original = ds.source_ids.empty() ? r.id : ds.source_ids[ids[i]];
    r.id = i;
    out.records.push_back(std::move(r));
    out.source_ids.push_back(original);
  }
  return out;
}

}  // namespace spatialcv

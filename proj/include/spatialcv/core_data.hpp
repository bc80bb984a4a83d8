#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spatialcv/rng.hpp"

namespace spatialcv {

using Coord = std::array<double, 2>;

// Euclidean distance between two planar coordinates (meters). This is the
// single distance definition used by every spatial query in the toolkit.
double spatial_distance(const Coord& a, const Coord& b);

enum class ResponseKind { continuous, categorical };

struct PointRecord {
  int id = 0;
  Coord coord{0.0, 0.0};
  std::vector<double> features;
  double response = 0.0;  // class label (non-negative integer) when categorical
};

// Immutable point dataset. Construct via make_dataset / load_csv /
// generate_field; every transform returns a new value.
struct GeoDataset {
  std::vector<PointRecord> records;
  std::vector<std::string> feature_names;
  ResponseKind response_kind = ResponseKind::continuous;
  std::string crs_note;  // free text; planar meters assumed
  // After subsampling, source_ids[i] is the id the i-th record had in the
  // parent dataset. Empty for original datasets.
  std::vector<int> source_ids;

  int size() const { return static_cast<int>(records.size()); }
  int feature_dim() const {
    return records.empty() ? 0 : static_cast<int>(records.front().features.size());
  }
};

// Errors raised while reading input data; the CLI maps these to usage/IO
// exit status, unlike computation failures.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Validates invariants (finite values, uniform feature dimension, contiguous
// ids, label integrality) and stamps ids by position.
GeoDataset make_dataset(std::vector<PointRecord> records,
                        std::vector<std::string> feature_names,
                        ResponseKind kind, std::string crs_note = "");

struct ColumnSchema {
  std::string east = "east";
  std::string north = "north";
  std::string response = "response";
  // Empty means: every remaining column is a feature, in header order.
  std::vector<std::string> features;
  ResponseKind response_kind = ResponseKind::continuous;
};

// CSV loader: header row required, UTF-8, '.' decimal point. Row order
// defines record ids.
GeoDataset load_csv(const std::string& path, const ColumnSchema& schema);

void write_csv(const GeoDataset& ds, const std::string& path,
               const ColumnSchema& schema);

// Uniform subsample without replacement of ceil(fraction * M) records.
// Ids are re-assigned contiguously; originals are kept in source_ids.
GeoDataset subsample_density(const GeoDataset& ds, double fraction, std::uint64_t seed);

}  // namespace spatialcv

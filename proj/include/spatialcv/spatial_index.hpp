#pragma once

#include <utility>
#include <vector>

#include "spatialcv/core_data.hpp"

namespace spatialcv {

// Uniform-grid acceleration structure over record coordinates. Purely an
// optimization: every query returns exactly what a brute-force scan over
// spatial_distance would. Immutable after construction; concurrent queries
// are safe.
class SpatialIndex {
 public:
  explicit SpatialIndex(std::vector<Coord> coords);
  explicit SpatialIndex(const GeoDataset& ds);

  int size() const { return static_cast<int>(coords_.size()); }
  const Coord& coord(int id) const { return coords_[id]; }

  // Ids with spatial_distance(coord, center) <= r, ascending. The boundary
  // is inclusive, so a record exactly r away is returned.
  std::vector<int> within_radius(const Coord& center, double r) const;

  // The k nearest non-excluded ids, ordered by (distance, id).
  // `exclude` must be sorted ascending. Throws if fewer than k candidates.
  std::vector<int> k_nearest(const Coord& center, int k,
                             const std::vector<int>& exclude = {}) const;

  // All unordered pairs {i, j}, i < j, with low <= distance <= high,
  // each listed once, lexicographically sorted.
  std::vector<std::pair<int, int>> pairs_in_band(double low, double high) const;

 private:
  void cells_overlapping(const Coord& center, double r, int& cx0, int& cy0,
                         int& cx1, int& cy1) const;
  int cell_x(double x) const;
  int cell_y(double y) const;

  std::vector<Coord> coords_;
  Coord origin_{0.0, 0.0};
  double cell_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<int> cell_start_;  // CSR offsets, nx_*ny_ + 1
  std::vector<int> cell_ids_;    // record ids grouped by cell, ascending within
};

}  // namespace spatialcv

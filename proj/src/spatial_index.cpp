#include "spatialcv/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spatialcv {

namespace {

std::vector<Coord> coords_of(const GeoDataset& ds) {
  std::vector<Coord> out;
  out.reserve(ds.records.size());
  for (const auto& r : ds.records) {
    out.push_back(r.coord);
  }
  return out;
}

}  // namespace

SpatialIndex::SpatialIndex(const GeoDataset& ds) : SpatialIndex(coords_of(ds)) {}

SpatialIndex::SpatialIndex(std::vector<Coord> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw std::invalid_argument("spatial index requires at least one coordinate");
  }
  double xmin = coords_[0][0], xmax = xmin, ymin = coords_[0][1], ymax = ymin;
  for (const auto& c : coords_) {
    xmin = std::min(xmin, c[0]);
    xmax = std::max(xmax, c[0]);
    ymin = std::min(ymin, c[1]);
    ymax = std::max(ymax, c[1]);
  }
  origin_ = {xmin, ymin};
  const double extent = std::max(xmax - xmin, ymax - ymin);
  const int m = static_cast<int>(coords_.size());
  // Aim for O(1) points per cell; degenerate (single point / co-located) data
  // collapses to one cell.
  const int target = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m)))));
  cell_ = extent > 0.0 ? extent / target : 1.0;
  nx_ = std::max(1, static_cast<int>(std::floor((xmax - xmin) / cell_)) + 1);
  ny_ = std::max(1, static_cast<int>(std::floor((ymax - ymin) / cell_)) + 1);

  std::vector<int> counts(static_cast<std::size_t>(nx_) * ny_, 0);
  auto cell_of = [&](const Coord& c) {
    return cell_y(c[1]) * nx_ + cell_x(c[0]);
  };
  for (const auto& c : coords_) {
    ++counts[cell_of(c)];
  }
  cell_start_.assign(counts.size() + 1, 0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    cell_start_[i + 1] = cell_start_[i] + counts[i];
  }
  cell_ids_.resize(coords_.size());
  std::vector<int> cursor(cell_start_.begin(), cell_start_.end() - 1);
  for (int id = 0; id < m; ++id) {
    cell_ids_[cursor[cell_of(coords_[id])]++] = id;
  }
  // ids were inserted in ascending order per cell already
}

int SpatialIndex::cell_x(double x) const {
  const int i = static_cast<int>(std::floor((x - origin_[0]) / cell_));
  return std::clamp(i, 0, nx_ - 1);
}

int SpatialIndex::cell_y(double y) const {
  const int i = static_cast<int>(std::floor((y - origin_[1]) / cell_));
  return std::clamp(i, 0, ny_ - 1);
}

void SpatialIndex::cells_overlapping(const Coord& center, double r, int& cx0, int& cy0,
                                     int& cx1, int& cy1) const {
  cx0 = cell_x(center[0] - r);
  cx1 = cell_x(center[0] + r);
  cy0 = cell_y(center[1] - r);
  cy1 = cell_y(center[1] + r);
}

std::vector<int> SpatialIndex::within_radius(const Coord& center, double r) const {
  if (r < 0.0) {
    throw std::invalid_argument("radius must be non-negative");
  }
  std::vector<int> out;
  int cx0, cy0, cx1, cy1;
  cells_overlapping(center, r, cx0, cy0, cx1, cy1);
  for (int cy = cy0; cy <= cy1; ++cy) {
    for (int cx = cx0; cx <= cx1; ++cx) {
      const int cell = cy * nx_ + cx;
      for (int k = cell_start_[cell]; k < cell_start_[cell + 1]; ++k) {
        const int id = cell_ids_[k];
        if (spatial_distance(coords_[id], center) <= r) {
          out.push_back(id);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> SpatialIndex::k_nearest(const Coord& center, int k,
                                         const std::vector<int>& exclude) const {
  if (k < 1) {
    throw std::invalid_argument("k must be at least 1");
  }
  const int available = size() - static_cast<int>(exclude.size());
  if (available < k) {
    throw std::runtime_error("k-nearest query needs " + std::to_string(k) +
                             " candidates but only " + std::to_string(available) +
                             " are available");
  }
  auto excluded = [&](int id) {
    return std::binary_search(exclude.begin(), exclude.end(), id);
  };

  // Expand over grid rings (Chebyshev distance t from the center cell). Once
  // k candidates are found within a radius that ring t fully covers, the
  // answer is complete.
  const int ccx = cell_x(center[0]);
  const int ccy = cell_y(center[1]);
  std::vector<std::pair<double, int>> found;  // (distance, id)
  const int tmax = std::max(std::max(ccx, nx_ - 1 - ccx), std::max(ccy, ny_ - 1 - ccy));
  for (int t = 0; t <= tmax; ++t) {
    for (int cy = std::max(0, ccy - t); cy <= std::min(ny_ - 1, ccy + t); ++cy) {
      for (int cx = std::max(0, ccx - t); cx <= std::min(nx_ - 1, ccx + t); ++cx) {
        if (std::max(std::abs(cx - ccx), std::abs(cy - ccy)) != t) {
          continue;  // interior rings already scanned
        }
        const int cell = cy * nx_ + cx;
        for (int i = cell_start_[cell]; i < cell_start_[cell + 1]; ++i) {
          const int id = cell_ids_[i];
          if (!excluded(id)) {
            found.emplace_back(spatial_distance(coords_[id], center), id);
          }
        }
      }
    }
    if (static_cast<int>(found.size()) >= k) {
      // Any unscanned point is farther than t*cell_ from the center.
      std::nth_element(found.begin(), found.begin() + (k - 1), found.end());
      if (found[k - 1].first <= static_cast<double>(t) * cell_) {
        break;
      }
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<int> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    out.push_back(found[i].second);
  }
  return out;
}

std::vector<std::pair<int, int>> SpatialIndex::pairs_in_band(double low, double high) const {
  if (low < 0.0 || low > high) {
    throw std::invalid_argument("band must satisfy 0 <= low <= high");
  }
  std::vector<std::pair<int, int>> out;
  const int m = size();
  for (int i = 0; i < m; ++i) {
    int cx0, cy0, cx1, cy1;
    cells_overlapping(coords_[i], high, cx0, cy0, cx1, cy1);
    for (int cy = cy0; cy <= cy1; ++cy) {
      for (int cx = cx0; cx <= cx1; ++cx) {
        const int cell = cy * nx_ + cx;
        for (int k = cell_start_[cell]; k < cell_start_[cell + 1]; ++k) {
          const int j = cell_ids_[k];
          if (j <= i) {
            continue;
          }
          const double d = spatial_distance(coords_[i], coords_[j]);
          if (d >= low && d <= high) {
            out.emplace_back(i, j);
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace spatialcv

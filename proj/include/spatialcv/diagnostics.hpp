#pragma once

#include <optional>
#include <vector>

#include "spatialcv/core_data.hpp"
#include "spatialcv/spatial_index.hpp"

namespace spatialcv {

// Distance-lag binning: bin b covers [center - tolerance, center + tolerance].
struct LagGrid {
  std::vector<double> lag_centers;  // strictly ascending, meters
  double tolerance = 0.0;           // > 0

  void validate() const;
};

LagGrid make_lag_grid(double max_lag, double step, double tolerance);

struct VariogramBin {
  double lag_center = 0.0;
  long pair_count = 0;
  std::optional<double> gamma;  // absent when the bin holds no pairs
};

struct VariogramEstimate {
  std::vector<VariogramBin> bins;
  double sill = 0.0;  // sample variance of the response
};

struct CorrelogramBin {
  double lag_center = 0.0;
  long pair_count = 0;
  std::optional<double> moran_i;  // absent when the bin holds no pairs
};

struct CorrelogramEstimate {
  std::vector<CorrelogramBin> bins;
  double baseline = 0.0;  // the no-correlation reference
};

// Matheron (method-of-moments) estimator:
//   gamma(m) = sum over pairs with distance in [m-t, m+t] of (y_i - y_j)^2
//              / (2 * pair_count).
VariogramEstimate semivariogram(const GeoDataset& ds, const SpatialIndex& idx,
                                const LagGrid& lags);

// Moran's I per lag bin with binary distance-band weights (both orders
// counted in W):
//   I = (M / W) * sum_ij w_ij (y_i - ybar)(y_j - ybar) / sum_i (y_i - ybar)^2.
CorrelogramEstimate morans_i(const GeoDataset& ds, const SpatialIndex& idx,
                             const LagGrid& lags);

struct SillRangeFit {
  double sill = 0.0;
  // Smallest lag center where gamma >= 0.95 * sill; +infinity when the
  // variogram never reaches that level inside the grid.
  double effective_range = 0.0;
};

SillRangeFit fit_sill_range(const VariogramEstimate& v);

}  // namespace spatialcv

#include "spatialcv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spatialcv {

void LagGrid::validate() const {
  if (lag_centers.empty()) {
    throw std::invalid_argument("lag grid needs at least one center");
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("lag tolerance must be positive");
  }
  for (std::size_t i = 1; i < lag_centers.size(); ++i) {
    if (!(lag_centers[i] > lag_centers[i - 1])) {
      throw std::invalid_argument("lag centers must be strictly ascending");
    }
  }
}

LagGrid make_lag_grid(double max_lag, double step, double tolerance) {
  if (!(step > 0.0) || !(max_lag >= step)) {
    throw std::invalid_argument("lag grid needs step > 0 and max >= step");
  }
  LagGrid grid;
  grid.tolerance = tolerance;
  for (double m = step; m <= max_lag + 1e-9; m += step) {
    grid.lag_centers.push_back(m);
  }
  grid.validate();
  return grid;
}

namespace {

double sample_variance(const GeoDataset& ds) {
  const int m = ds.size();
  double mean = 0.0;
  for (const auto& r : ds.records) {
    mean += r.response;
  }
  mean /= m;
  double ss = 0.0;
  for (const auto& r : ds.records) {
    const double d = r.response - mean;
    ss += d * d;
  }
  return m > 1 ? ss / (m - 1) : 0.0;
}

}  // namespace

VariogramEstimate semivariogram(const GeoDataset& ds, const SpatialIndex& idx,
                                const LagGrid& lags) {
  lags.validate();
  if (ds.size() < 2) {
    throw std::runtime_error("semivariogram needs at least two records");
  }
  VariogramEstimate est;
  est.sill = sample_variance(ds);
  long total_pairs = 0;
  for (double m : lags.lag_centers) {
    const double low = std::max(0.0, m - lags.tolerance);
    const double high = m + lags.tolerance;
    const auto pairs = idx.pairs_in_band(low, high);
    VariogramBin bin;
    bin.lag_center = m;
    bin.pair_count = static_cast<long>(pairs.size());
    if (!pairs.empty()) {
      double sum = 0.0;
      for (const auto& [i, j] : pairs) {
        const double d = ds.records[i].response - ds.records[j].response;
        sum += d * d;
      }
      bin.gamma = sum / (2.0 * static_cast<double>(pairs.size()));
    }
    total_pairs += bin.pair_count;
    est.bins.push_back(bin);
  }
  if (total_pairs == 0) {
    throw std::runtime_error("all lag bins are empty; widen the lag grid or tolerance");
  }
  return est;
}

CorrelogramEstimate morans_i(const GeoDataset& ds, const SpatialIndex& idx,
                             const LagGrid& lags) {
  lags.validate();
  const int m = ds.size();
  double mean = 0.0;
  for (const auto& r : ds.records) {
    mean += r.response;
  }
  mean /= m;
  double ss = 0.0;
  for (const auto& r : ds.records) {
    const double d = r.response - mean;
    ss += d * d;
  }
  if (ss == 0.0) {
    throw std::runtime_error("constant response: Moran's I is undefined");
  }

  CorrelogramEstimate est;
  for (double c : lags.lag_centers) {
    const double low = std::max(0.0, c - lags.tolerance);
    const double high = c + lags.tolerance;
    const auto pairs = idx.pairs_in_band(low, high);
    CorrelogramBin bin;
    bin.lag_center = c;
    bin.pair_count = static_cast<long>(pairs.size());
    if (!pairs.empty()) {
      double cross = 0.0;
      for (const auto& [i, j] : pairs) {
        cross += (ds.records[i].response - mean) * (ds.records[j].response - mean);
      }
      // W counts both orders of each unordered pair.
      const double w = 2.0 * static_cast<double>(pairs.size());
      bin.moran_i = (static_cast<double>(m) / w) * (2.0 * cross) / ss;
    }
    est.bins.push_back(bin);
  }
  return est;
}

SillRangeFit fit_sill_range(const VariogramEstimate& v) {
  int nonempty = 0;
  for (const auto& b : v.bins) {
    if (b.gamma.has_value()) {
      ++nonempty;
    }
  }
  if (nonempty < 3) {
    throw std::runtime_error("sill/range fit needs at least 3 non-empty lag bins, found " +
                             std::to_string(nonempty));
  }
  SillRangeFit fit;
  fit.sill = v.sill;
  fit.effective_range = std::numeric_limits<double>::infinity();
  for (const auto& b : v.bins) {
    if (b.gamma.has_value() && *b.gamma >= 0.95 * v.sill) {
      fit.effective_range = b.lag_center;
      break;
    }
  }
  return fit;
}

}  // namespace spatialcv

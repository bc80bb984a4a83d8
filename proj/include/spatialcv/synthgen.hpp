#pragma once

#include <cstdint>

#include "spatialcv/core_data.hpp"
#include "spatialcv/prediction.hpp"
#include "spatialcv/sampling_planner.hpp"

namespace spatialcv {

enum class CovModel { exponential, gaussian_cov, nugget_only };

// Synthetic spatially autocorrelated dataset: a zero-mean Gaussian process
// over uniform coordinates, realized through a dense Cholesky factorization
// (exact, desk scale: keep n_points <= ~5000).
//
// Features are the latent response plus per-feature noise of standard
// deviation feature_noise. With feature_noise_range > 0 the noise is itself a
// smooth field (exponential correlation with that range), mimicking
// remote-sensing proxies; with 0 it is white.
struct FieldSpec {
  Rect area{{0.0, 0.0}, {1000.0, 1000.0}};
  int n_points = 0;
  CovModel model = CovModel::exponential;
  double sill = 1.0;    // sigma^2
  double range = 1.0;   // rho, meters
  double nugget = 0.0;
  int n_features = 1;
  double feature_noise = 0.0;
  double feature_noise_range = 0.0;  // 0 = spatially white noise
  std::uint64_t seed = 0;
  Task task = Task::regression;
  int n_classes = 0;  // classification only

  void validate() const;
};

GeoDataset generate_field(const FieldSpec& spec);

// Closed-form semivariogram of the generating process:
//   gamma(h) = nugget + sill * (1 - corr(h)),   corr(0) = 1,
// so gamma(0) = nugget and gamma(inf) = nugget + sill.
double theoretical_variogram(const FieldSpec& spec, double h);

}  // namespace spatialcv

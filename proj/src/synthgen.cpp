#include "spatialcv/synthgen.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace spatialcv {

void FieldSpec::validate() const {
  area.validate();
  if (n_points < 2) {
    throw std::invalid_argument("field needs at least 2 points");
  }
  if (!(sill > 0.0)) {
    throw std::invalid_argument("sill must be positive");
  }
  if (!(range > 0.0)) {
    throw std::invalid_argument("range must be positive");
  }
  if (nugget < 0.0) {
    throw std::invalid_argument("nugget must be non-negative");
  }
  if (n_features < 0) {
    throw std::invalid_argument("feature count must be non-negative");
  }
  if (feature_noise < 0.0 || feature_noise_range < 0.0) {
    throw std::invalid_argument("feature noise parameters must be non-negative");
  }
  if (task == Task::classification && n_classes < 2) {
    throw std::invalid_argument("classification fields need n_classes >= 2");
  }
}

namespace {

double correlation(CovModel model, double h, double range) {
  switch (model) {
    case CovModel::exponential:
      return std::exp(-h / range);
    case CovModel::gaussian_cov: {
      const double s = h / range;
      return std::exp(-s * s);
    }
    case CovModel::nugget_only:
      return h == 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

// Lower Cholesky factor of C with C_ij = sill * corr(h_ij) off the diagonal
// and C_ii = sill + nugget.
Eigen::MatrixXd covariance_factor(const std::vector<Coord>& coords, CovModel model,
                                  double range, double sill, double nugget) {
  const int m = static_cast<int>(coords.size());
  Eigen::MatrixXd c(m, m);
  for (int i = 0; i < m; ++i) {
    c(i, i) = sill + nugget;
    for (int j = 0; j < i; ++j) {
      const double v =
          sill * correlation(model, spatial_distance(coords[i], coords[j]), range);
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(
        "covariance factorization failed (matrix not positive definite in double "
        "precision); add a small nugget to regularize");
  }
  return llt.matrixL();
}

// Standard normal CDF and its inverse by bisection; used for the
// equal-probability class thresholds.
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  double lo = -12.0, hi = 12.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GeoDataset generate_field(const FieldSpec& spec) {
  spec.validate();
  const int m = spec.n_points;

  Rng coord_rng(Rng::derive_stream(spec.seed, 0));
  std::vector<Coord> coords(m);
  for (auto& c : coords) {
    c = {coord_rng.uniform(spec.area.min[0], spec.area.max[0]),
         coord_rng.uniform(spec.area.min[1], spec.area.max[1])};
  }

  const bool needs_factor = spec.model != CovModel::nugget_only;
  Eigen::MatrixXd response_factor;
  if (needs_factor) {
    response_factor =
        covariance_factor(coords, spec.model, spec.range, spec.sill, spec.nugget);
  }

  Rng field_rng(Rng::derive_stream(spec.seed, 1));
  Eigen::VectorXd z(m);
  for (int i = 0; i < m; ++i) {
    z(i) = field_rng.normal();
  }
  std::vector<double> latent(m);
  if (needs_factor) {
    const Eigen::VectorXd y = response_factor * z;
    for (int i = 0; i < m; ++i) {
      latent[i] = y(i);
    }
  } else {
    const double scale = std::sqrt(spec.sill + spec.nugget);
    for (int i = 0; i < m; ++i) {
      latent[i] = scale * z(i);
    }
  }

  // Feature noise: smooth (unit-variance exponential correlation) when a
  // range is given, white otherwise. The factor is reused across features.
  Eigen::MatrixXd noise_factor;
  const bool noise_correlated = spec.feature_noise_range > 0.0 && spec.feature_noise > 0.0;
  if (noise_correlated) {
    if (needs_factor && spec.model == CovModel::exponential &&
        spec.feature_noise_range == spec.range && spec.nugget == 0.0) {
      noise_factor = response_factor / std::sqrt(spec.sill);
    } else {
      noise_factor =
          covariance_factor(coords, CovModel::exponential, spec.feature_noise_range, 1.0, 0.0);
    }
  }

  std::vector<std::vector<double>> feature_columns;
  feature_columns.reserve(spec.n_features);
  for (int f = 0; f < spec.n_features; ++f) {
    Rng noise_rng(Rng::derive_stream(spec.seed, 100 + f));
    std::vector<double> column(m);
    if (noise_correlated) {
      Eigen::VectorXd zn(m);
      for (int i = 0; i < m; ++i) {
        zn(i) = noise_rng.normal();
      }
      const Eigen::VectorXd eta = noise_factor * zn;
      for (int i = 0; i < m; ++i) {
        column[i] = latent[i] + spec.feature_noise * eta(i);
      }
    } else {
      for (int i = 0; i < m; ++i) {
        column[i] = latent[i] + spec.feature_noise * noise_rng.normal();
      }
    }
    feature_columns.push_back(std::move(column));
  }

  std::vector<double> responses = latent;
  ResponseKind kind = ResponseKind::continuous;
  if (spec.task == Task::classification) {
    // Equal-probability bins of the latent marginal N(0, sill + nugget).
    kind = ResponseKind::categorical;
    const double scale = std::sqrt(spec.sill + spec.nugget);
    std::vector<double> thresholds;
    for (int c = 1; c < spec.n_classes; ++c) {
      thresholds.push_back(scale *
                           normal_quantile(static_cast<double>(c) / spec.n_classes));
    }
    for (int i = 0; i < m; ++i) {
      int label = 0;
      for (double t : thresholds) {
        if (latent[i] > t) {
          ++label;
        }
      }
      responses[i] = static_cast<double>(label);
    }
  }

  std::vector<PointRecord> records(m);
  for (int i = 0; i < m; ++i) {
    records[i].coord = coords[i];
    records[i].response = responses[i];
    records[i].features.reserve(spec.n_features);
    for (int f = 0; f < spec.n_features; ++f) {
      records[i].features.push_back(feature_columns[f][i]);
    }
  }
  std::vector<std::string> names;
  names.reserve(spec.n_features);
  for (int f = 0; f < spec.n_features; ++f) {
    names.push_back("f" + std::to_string(f + 1));
  }
  return make_dataset(std::move(records), std::move(names), kind, "synthetic planar meters");
}

double theoretical_variogram(const FieldSpec& spec, double h) {
  if (h < 0.0) {
    throw std::invalid_argument("lag must be non-negative");
  }
  return spec.nugget + spec.sill * (1.0 - correlation(spec.model, h, spec.range));
}

}  // namespace spatialcv

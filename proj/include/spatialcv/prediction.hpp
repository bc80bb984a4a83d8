#pragma once

#include <span>
#include <vector>

#include "spatialcv/core_data.hpp"

namespace spatialcv {

enum class Task { regression, classification };

// Per-feature z-score parameters, fitted on training data only. stddev is the
// population standard deviation; zero-stddev features are flagged and their
// transformed value is 0.
struct StandardizationParams {
  std::vector<double> mean;
  std::vector<double> stddev;

  bool has_degenerate_feature() const;
};

StandardizationParams fit_standardizer(std::span<const PointRecord> train);

std::vector<double> transform(const StandardizationParams& p,
                              std::span<const double> x);

// Feature-space k-nearest-neighbor model: neighbors by Euclidean distance
// over standardized features (not the spatial distance). Regression predicts
// the mean response of the k neighbors, classification their mode.
//
// Determinism conventions: neighbor order is (squared feature distance,
// training id) ascending; mode ties go to the label whose nearest
// representative is closest, then to the smaller label.
class KnnModel {
 public:
  KnnModel(std::span<const PointRecord> train, int k, Task task,
           StandardizationParams params);

  // Convenience: fits the standardizer on `train` itself.
  static KnnModel fit(std::span<const PointRecord> train, int k, Task task);

  double predict(std::span<const double> raw_features) const;

  int k() const { return k_; }
  Task task() const { return task_; }
  int training_size() const { return static_cast<int>(ids_.size()); }
  const StandardizationParams& standardizer() const { return params_; }

 private:
  std::vector<std::pair<double, int>> neighbor_order(std::span<const double> raw) const;

  int k_;
  Task task_;
  int dim_;
  StandardizationParams params_;
  std::vector<int> ids_;
  std::vector<double> features_;  // row-major standardized, training_size x dim
  std::vector<double> responses_;
};

double rmse(std::span<const double> predicted, std::span<const double> actual);

// Fraction of exact label matches.
double accuracy(std::span<const double> predicted, std::span<const double> actual);

}  // namespace spatialcv

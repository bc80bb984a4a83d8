#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spatialcv/core_data.hpp"
#include "spatialcv/prediction.hpp"
#include "spatialcv/spatial_index.hpp"

namespace spatialcv {

enum class FoldConstruction { random_k_fold, leave_one_out, user_supplied };

// Disjoint test folds covering all record ids.
struct FoldPlan {
  std::vector<std::vector<int>> folds;
  FoldConstruction construction = FoldConstruction::random_k_fold;
  std::uint64_t seed = 0;

  int fold_count() const { return static_cast<int>(folds.size()); }
};

// Seeded shuffle dealt round-robin into k folds (sizes differ by at most 1).
// k equal to the record count yields the leave-one-out case.
FoldPlan make_folds(const GeoDataset& ds, int k, std::uint64_t seed);

FoldPlan make_loo_plan(const GeoDataset& ds);

// Validates a user-provided partition (disjoint, covering, nonempty folds).
FoldPlan make_user_plan(std::vector<std::vector<int>> folds, const GeoDataset& ds);

// Ascending list of dead-zone radii, all >= 0.
struct DeadZoneSpec {
  std::vector<double> radii;

  void validate() const;
};

enum class StandardizeScope {
  per_fold,  // statistics from the fold's retained training records (leakage-free)
  global     // statistics from the full dataset, for comparison runs
};

struct ModelConfig {
  int k = 9;
  Task task = Task::regression;
  StandardizeScope scope = StandardizeScope::per_fold;
};

// Training-set reduction for one fold: removed = records within r_delta of
// any fold member (boundary inclusive), minus the fold itself; training =
// everything else outside the fold. Every retained training record is
// strictly farther than r_delta from every fold member.
struct DeadZoneSplit {
  std::vector<int> training_ids;  // ascending
  std::vector<int> removed_ids;   // ascending
};

DeadZoneSplit dead_zone_filter(const GeoDataset& ds, const SpatialIndex& idx,
                               const std::vector<int>& fold, double r_delta);

struct FoldOutcome {
  int fold_index = 0;
  std::vector<int> removed_ids;
  int retained_training_size = 0;
  std::vector<std::pair<int, double>> predictions;  // (record id, prediction)
  bool skipped = false;
  std::string skip_reason;
};

// Raised when a dead zone leaves no usable fold.
struct DeadZoneExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CvResult {
  std::map<int, double> yhat;  // record id -> prediction, non-skipped folds only
  std::vector<FoldOutcome> fold_outcomes;

  double metric(const GeoDataset& ds, Task task) const;
  int skipped_folds() const;
  double mean_removed() const;
};

// Spatial k-fold cross validation: per fold, drop training records inside the
// dead zone, fit the standardizer and kNN model on what remains, and predict
// every fold member. Folds whose retained training set is smaller than the
// model's k are skipped; if every fold is skipped, DeadZoneExhausted is
// thrown. The dead-zone guarantee (min test-to-training spatial distance
// > r_delta) is asserted on every non-skipped fold.
CvResult run_skcv(const GeoDataset& ds, const SpatialIndex& idx, const FoldPlan& plan,
                  double r_delta, const ModelConfig& model, int threads = 1);

// Random-leave-out control: removes, per fold, exactly as many training
// records as the dead zone would, but chosen uniformly at random from all
// non-fold records. Per-fold randomness is keyed by (seed, fold index).
CvResult run_skcv_rlo(const GeoDataset& ds, const SpatialIndex& idx, const FoldPlan& plan,
                      double r_delta, const ModelConfig& model, std::uint64_t seed,
                      int threads = 1);

enum class CvMode { skcv, rlo };

struct FoldSpec {
  FoldConstruction construction = FoldConstruction::random_k_fold;
  int k = 10;                            // random_k_fold only
  std::vector<std::vector<int>> folds;   // user_supplied only
};

struct CurvePoint {
  double r_delta = 0.0;
  std::optional<double> metric;  // absent when every fold was skipped
  double mean_removed = 0.0;
  int skipped_folds = 0;
};

struct EvaluationCurve {
  std::vector<CurvePoint> points;
  Task metric_kind = Task::regression;  // regression -> rmse, classification -> accuracy
  double density_fraction = 1.0;
};

struct SweepConfig {
  DeadZoneSpec radii;
  std::vector<double> densities{1.0};
  CvMode mode = CvMode::skcv;
  FoldSpec folds;
  ModelConfig model;
  std::uint64_t seed = 0;
  int threads = 1;
};

// One curve per density: the density subsample and fold plan are drawn once,
// then every radius is evaluated on them. A radius whose dead zone skips all
// folds yields a point without a metric value.
std::vector<EvaluationCurve> sweep(const GeoDataset& ds, const SweepConfig& cfg);

}  // namespace spatialcv

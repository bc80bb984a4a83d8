#include "spatialcv/cv_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

namespace spatialcv {

FoldPlan make_folds(const GeoDataset& ds, int k, std::uint64_t seed) {
  const int m = ds.size();
  if (k <= 1 || k > m) {
    throw std::invalid_argument("fold count must satisfy 1 < k <= " + std::to_string(m) +
                                ", got " + std::to_string(k));
  }
  std::vector<int> ids(m);
  std::iota(ids.begin(), ids.end(), 0);
  Rng rng(seed);
  rng.shuffle(ids);

  FoldPlan plan;
  plan.construction = k == m ? FoldConstruction::leave_one_out : FoldConstruction::random_k_fold;
  plan.seed = seed;
  plan.folds.assign(k, {});
  for (int i = 0; i < m; ++i) {
    plan.folds[i % k].push_back(ids[i]);
  }
  return plan;
}

FoldPlan make_loo_plan(const GeoDataset& ds) {
  FoldPlan plan;
  plan.construction = FoldConstruction::leave_one_out;
  plan.folds.reserve(ds.size());
  for (int i = 0; i < ds.size(); ++i) {
    plan.folds.push_back({i});
  }
  return plan;
}

FoldPlan make_user_plan(std::vector<std::vector<int>> folds, const GeoDataset& ds) {
  std::vector<bool> seen(ds.size(), false);
  int covered = 0;
  for (const auto& fold : folds) {
    if (fold.empty()) {
      throw std::invalid_argument("user fold plan contains an empty fold");
    }
    for (int id : fold) {
      if (id < 0 || id >= ds.size()) {
        throw std::invalid_argument("fold id " + std::to_string(id) + " out of range");
      }
      if (seen[id]) {
        throw std::invalid_argument("record " + std::to_string(id) +
                                    " appears in more than one fold");
      }
      seen[id] = true;
      ++covered;
    }
  }
  if (covered != ds.size()) {
    throw std::invalid_argument("fold plan covers " + std::to_string(covered) + " of " +
                                std::to_string(ds.size()) + " records");
  }
  FoldPlan plan;
  plan.folds = std::move(folds);
  plan.construction = FoldConstruction::user_supplied;
  return plan;
}

void DeadZoneSpec::validate() const {
  if (radii.empty()) {
    throw std::invalid_argument("dead-zone spec needs at least one radius");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 0.0) {
      throw std::invalid_argument("dead-zone radii must be non-negative");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw std::invalid_argument("dead-zone radii must be strictly ascending");
    }
  }
}

DeadZoneSplit dead_zone_filter(const GeoDataset& ds, const SpatialIndex& idx,
                               const std::vector<int>& fold, double r_delta) {
  if (r_delta < 0.0) {
    throw std::invalid_argument("dead-zone radius must be non-negative");
  }
  std::vector<bool> in_fold(ds.size(), false);
  for (int id : fold) {
    in_fold[id] = true;
  }
  std::vector<bool> removed(ds.size(), false);
  for (int id : fold) {
    for (int j : idx.within_radius(ds.records[id].coord, r_delta)) {
      if (!in_fold[j]) {
        removed[j] = true;
      }
    }
  }
  DeadZoneSplit split;
  for (int j = 0; j < ds.size(); ++j) {
    if (in_fold[j]) {
      continue;
    }
    if (removed[j]) {
      split.removed_ids.push_back(j);
    } else {
      split.training_ids.push_back(j);
    }
  }
  return split;
}

namespace {

void run_folds_parallel(int fold_count, int threads,
                        const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, fold_count));
  if (threads == 1) {
    for (int i = 0; i < fold_count; ++i) {
      body(i);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (int i = t; i < fold_count; i += threads) {
          body(i);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

// The central guarantee: every retained training record is strictly farther
// than r_delta from every fold member. Checked directly against the raw
// coordinates, independent of the index and set arithmetic above.
void assert_dead_zone(const GeoDataset& ds, const std::vector<int>& fold,
                      const std::vector<int>& training, double r_delta) {
  for (int t : fold) {
    const Coord& c = ds.records[t].coord;
    for (int j : training) {
      if (spatial_distance(ds.records[j].coord, c) <= r_delta) {
        throw std::logic_error("dead-zone invariant violated: training record " +
                               std::to_string(j) + " is within " + std::to_string(r_delta) +
                               " m of test record " + std::to_string(t));
      }
    }
  }
}

FoldOutcome evaluate_fold(const GeoDataset& ds, const std::vector<int>& fold, int fold_index,
                          std::vector<int> training_ids, std::vector<int> removed_ids,
                          const ModelConfig& model) {
  FoldOutcome out;
  out.fold_index = fold_index;
  out.removed_ids = std::move(removed_ids);
  out.retained_training_size = static_cast<int>(training_ids.size());
  if (out.retained_training_size < model.k) {
    out.skipped = true;
    out.skip_reason = "retained training size " + std::to_string(out.retained_training_size) +
                      " < k = " + std::to_string(model.k);
    return out;
  }
  std::vector<PointRecord> train;
  train.reserve(training_ids.size());
  for (int id : training_ids) {
    train.push_back(ds.records[id]);
  }
  StandardizationParams params =
      model.scope == StandardizeScope::global
          ? fit_standardizer(std::span<const PointRecord>(ds.records))
          : fit_standardizer(std::span<const PointRecord>(train));
  const KnnModel knn(train, model.k, model.task, std::move(params));
  out.predictions.reserve(fold.size());
  for (int id : fold) {
    out.predictions.emplace_back(id, knn.predict(ds.records[id].features));
  }
  return out;
}

CvResult assemble(std::vector<FoldOutcome> outcomes, double r_delta) {
  CvResult result;
  bool any_ok = false;
  for (auto& o : outcomes) {
    if (!o.skipped) {
      any_ok = true;
      for (const auto& [id, pred] : o.predictions) {
        result.yhat.emplace(id, pred);
      }
    }
  }
  result.fold_outcomes = std::move(outcomes);
  if (!any_ok) {
    throw DeadZoneExhausted("dead zone exhausts data: every fold at r_delta = " +
                            std::to_string(r_delta) + " has fewer retained training records than k");
  }
  return result;
}

}  // namespace

CvResult run_skcv(const GeoDataset& ds, const SpatialIndex& idx, const FoldPlan& plan,
                  double r_delta, const ModelConfig& model, int threads) {
  std::vector<FoldOutcome> outcomes(plan.fold_count());
  run_folds_parallel(plan.fold_count(), threads, [&](int i) {
    DeadZoneSplit split = dead_zone_filter(ds, idx, plan.folds[i], r_delta);
    assert_dead_zone(ds, plan.folds[i], split.training_ids, r_delta);
    outcomes[i] = evaluate_fold(ds, plan.folds[i], i, std::move(split.training_ids),
                                std::move(split.removed_ids), model);
  });
  return assemble(std::move(outcomes), r_delta);
}

CvResult run_skcv_rlo(const GeoDataset& ds, const SpatialIndex& idx, const FoldPlan& plan,
                      double r_delta, const ModelConfig& model, std::uint64_t seed,
                      int threads) {
  std::vector<FoldOutcome> outcomes(plan.fold_count());
  run_folds_parallel(plan.fold_count(), threads, [&](int i) {
    const DeadZoneSplit skcv_split = dead_zone_filter(ds, idx, plan.folds[i], r_delta);
    const std::size_t n_remove = skcv_split.removed_ids.size();

    std::vector<bool> in_fold(ds.size(), false);
    for (int id : plan.folds[i]) {
      in_fold[id] = true;
    }
    std::vector<int> candidates;
    candidates.reserve(ds.size() - plan.folds[i].size());
    for (int j = 0; j < ds.size(); ++j) {
      if (!in_fold[j]) {
        candidates.push_back(j);
      }
    }
    Rng rng(Rng::derive_stream(seed, static_cast<std::uint64_t>(i)));
    for (std::size_t s = 0; s < n_remove; ++s) {
      const std::size_t j = s + rng.below(candidates.size() - s);
      std::swap(candidates[s], candidates[j]);
    }
    std::vector<int> removed(candidates.begin(), candidates.begin() + n_remove);
    std::vector<int> training(candidates.begin() + n_remove, candidates.end());
    std::sort(removed.begin(), removed.end());
    std::sort(training.begin(), training.end());
    outcomes[i] = evaluate_fold(ds, plan.folds[i], i, std::move(training),
                                std::move(removed), model);
  });
  return assemble(std::move(outcomes), r_delta);
}

double CvResult::metric(const GeoDataset& ds, Task task) const {
  std::vector<double> pred, actual;
  pred.reserve(yhat.size());
  actual.reserve(yhat.size());
  for (const auto& [id, p] : yhat) {
    pred.push_back(p);
    actual.push_back(ds.records[id].response);
  }
  return task == Task::regression ? rmse(pred, actual) : accuracy(pred, actual);
}

int CvResult::skipped_folds() const {
  int n = 0;
  for (const auto& o : fold_outcomes) {
    n += o.skipped ? 1 : 0;
  }
  return n;
}

double CvResult::mean_removed() const {
  if (fold_outcomes.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (const auto& o : fold_outcomes) {
    sum += static_cast<double>(o.removed_ids.size());
  }
  return sum / static_cast<double>(fold_outcomes.size());
}

std::vector<EvaluationCurve> sweep(const GeoDataset& ds, const SweepConfig& cfg) {
  cfg.radii.validate();
  if (cfg.densities.empty()) {
    throw std::invalid_argument("sweep needs at least one density fraction");
  }
  if (cfg.folds.construction == FoldConstruction::user_supplied) {
    for (double d : cfg.densities) {
      if (d != 1.0) {
        throw std::invalid_argument(
            "user-supplied folds require density 1.0 (fold ids refer to the full dataset)");
      }
    }
  }

  std::vector<EvaluationCurve> curves;
  for (std::size_t di = 0; di < cfg.densities.size(); ++di) {
    const double density = cfg.densities[di];
    const GeoDataset sub =
        density == 1.0 ? ds
                       : subsample_density(ds, density, Rng::derive_stream(cfg.seed, 1000 + di));
    const SpatialIndex idx(sub);

    FoldPlan plan;
    switch (cfg.folds.construction) {
      case FoldConstruction::random_k_fold:
        plan = make_folds(sub, std::min(cfg.folds.k, sub.size()), Rng::derive_stream(cfg.seed, 2000 + di));
        break;
      case FoldConstruction::leave_one_out:
        plan = make_loo_plan(sub);
        break;
      case FoldConstruction::user_supplied:
        plan = make_user_plan(cfg.folds.folds, sub);
        break;
    }

    EvaluationCurve curve;
    curve.metric_kind = cfg.model.task;
    curve.density_fraction = density;
    for (double r : cfg.radii.radii) {
      CurvePoint point;
      point.r_delta = r;
      try {
        const CvResult res =
            cfg.mode == CvMode::skcv
                ? run_skcv(sub, idx, plan, r, cfg.model, cfg.threads)
                : run_skcv_rlo(sub, idx, plan, r, cfg.model,
                               Rng::derive_stream(cfg.seed, 3000 + di), cfg.threads);
        point.metric = res.metric(sub, cfg.model.task);
        point.mean_removed = res.mean_removed();
        point.skipped_folds = res.skipped_folds();
      } catch (const DeadZoneExhausted&) {
        // The curve keeps one point per requested radius; a radius whose dead
        // zone skips every fold is reported without a metric value.
        point.metric = std::nullopt;
        point.skipped_folds = plan.fold_count();
        double removed_sum = 0.0;
        for (const auto& fold : plan.folds) {
          removed_sum += static_cast<double>(dead_zone_filter(sub, idx, fold, r).removed_ids.size());
        }
        point.mean_removed = removed_sum / std::max(1, plan.fold_count());
      }
      curve.points.push_back(std::move(point));
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace spatialcv

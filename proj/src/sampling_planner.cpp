#include "spatialcv/sampling_planner.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "spatialcv/spatial_index.hpp"

namespace spatialcv {

void Rect::validate() const {
  if (!(width() > 0.0) || !(height() > 0.0)) {
    throw std::invalid_argument("rectangle must have positive width and height");
  }
}

Rect bounding_rect(const GeoDataset& ds) {
  Rect r{ds.records.front().coord, ds.records.front().coord};
  for (const auto& rec : ds.records) {
    r.min[0] = std::min(r.min[0], rec.coord[0]);
    r.min[1] = std::min(r.min[1], rec.coord[1]);
    r.max[0] = std::max(r.max[0], rec.coord[0]);
    r.max[1] = std::max(r.max[1], rec.coord[1]);
  }
  // Degenerate data (a single point, or a line of points) still needs a valid
  // rectangle for lattice generation.
  for (int axis = 0; axis < 2; ++axis) {
    if (!(r.max[axis] - r.min[axis] > 0.0)) {
      r.min[axis] -= 0.5;
      r.max[axis] += 0.5;
    }
  }
  return r;
}

SamplingPlan hex_lattice(const Rect& area, double r_delta) {
  area.validate();
  if (!(r_delta > 0.0)) {
    throw std::invalid_argument("sampling radius must be positive");
  }
  const double a = std::sqrt(3.0) * r_delta;  // nearest-site spacing
  const double row_height = a * std::sqrt(3.0) / 2.0;

  SamplingPlan plan;
  plan.covering_radius = r_delta;
  plan.lattice_spacing = a;

  const int row_lo = -1;
  const int row_hi = static_cast<int>(std::floor(area.height() / row_height)) + 1;
  const int col_hi = static_cast<int>(std::floor(area.width() / a)) + 1;
  for (int row = row_lo; row <= row_hi; ++row) {
    const double y = area.min[1] + row * row_height;
    const double offset = (((row % 2) + 2) % 2 == 1) ? a / 2.0 : 0.0;
    for (int col = -1; col <= col_hi; ++col) {
      plan.sites.push_back({area.min[0] + offset + col * a, y});
    }
  }
  return plan;
}

double covering_max_gap(const SamplingPlan& plan, const Rect& area, double pitch) {
  if (!(pitch > 0.0)) {
    throw std::invalid_argument("probe pitch must be positive");
  }
  const SpatialIndex idx(plan.sites);
  double worst = 0.0;
  const int nx = static_cast<int>(std::floor(area.width() / pitch));
  const int ny = static_cast<int>(std::floor(area.height() / pitch));
  for (int iy = 0; iy <= ny; ++iy) {
    for (int ix = 0; ix <= nx; ++ix) {
      // Include the far edges exactly.
      const Coord p{std::min(area.min[0] + ix * pitch, area.max[0]),
                    std::min(area.min[1] + iy * pitch, area.max[1])};
      const int nearest = idx.k_nearest(p, 1).front();
      worst = std::max(worst, spatial_distance(p, plan.sites[nearest]));
    }
  }
  return worst;
}

double sample_generalize(const GeoDataset& ds, const Rect& area, double r_delta,
                         const ModelConfig& model) {
  const SamplingPlan plan = hex_lattice(area, r_delta);
  const SpatialIndex idx(ds);
  std::set<int> selected;
  for (const auto& site : plan.sites) {
    selected.insert(idx.k_nearest(site, 1).front());
  }
  if (static_cast<int>(selected.size()) >= ds.size()) {
    throw std::runtime_error("sampling radius " + std::to_string(r_delta) +
                             " selects every record as training; nothing left to evaluate");
  }
  if (static_cast<int>(selected.size()) < model.k) {
    throw std::runtime_error("sampling radius " + std::to_string(r_delta) + " selects only " +
                             std::to_string(selected.size()) + " training records, fewer than k = " +
                             std::to_string(model.k));
  }
  std::vector<PointRecord> train;
  train.reserve(selected.size());
  for (int id : selected) {
    train.push_back(ds.records[id]);
  }
  const KnnModel knn = KnnModel::fit(train, model.k, model.task);
  std::vector<double> pred, actual;
  for (const auto& r : ds.records) {
    if (selected.count(r.id) == 0) {
      pred.push_back(knn.predict(r.features));
      actual.push_back(r.response);
    }
  }
  return model.task == Task::regression ? rmse(pred, actual) : accuracy(pred, actual);
}

double sample_generalize(const GeoDataset& ds, double r_delta, const ModelConfig& model) {
  return sample_generalize(ds, bounding_rect(ds), r_delta, model);
}

std::vector<Rect> partition_grid(const Rect& area, int g) {
  area.validate();
  if (g < 2) {
    throw std::invalid_argument("grid partition needs g >= 2");
  }
  const double w = area.width() / g;
  const double h = area.height() / g;
  std::vector<Rect> cells;
  cells.reserve(static_cast<std::size_t>(g) * g);
  for (int row = 0; row < g; ++row) {
    for (int col = 0; col < g; ++col) {
      Rect cell;
      cell.min = {area.min[0] + col * w, area.min[1] + row * h};
      cell.max = {col + 1 == g ? area.max[0] : area.min[0] + (col + 1) * w,
                  row + 1 == g ? area.max[1] : area.min[1] + (row + 1) * h};
      cells.push_back(cell);
    }
  }
  return cells;
}

int cell_of(const Rect& area, int g, const Coord& c) {
  const double w = area.width() / g;
  const double h = area.height() / g;
  const int col = std::clamp(static_cast<int>(std::floor((c[0] - area.min[0]) / w)), 0, g - 1);
  const int row = std::clamp(static_cast<int>(std::floor((c[1] - area.min[1]) / h)), 0, g - 1);
  return row * g + col;
}

namespace {

bool inside(const Rect& area, const Coord& c) {
  return c[0] >= area.min[0] && c[0] <= area.max[0] && c[1] >= area.min[1] &&
         c[1] <= area.max[1];
}

// Records outside the partition area are not part of the analysis.
GeoDataset cell_dataset(const GeoDataset& ds, const Rect& area, int g, int cell) {
  GeoDataset out;
  out.feature_names = ds.feature_names;
  out.response_kind = ds.response_kind;
  out.crs_note = ds.crs_note;
  for (const auto& r : ds.records) {
    if (inside(area, r.coord) && cell_of(area, g, r.coord) == cell) {
      PointRecord copy = r;
      copy.id = static_cast<int>(out.records.size());
      out.records.push_back(std::move(copy));
      out.source_ids.push_back(r.id);
    }
  }
  return out;
}

}  // namespace

std::vector<PairDifferenceSummary> pairwise_bias_variance(
    const GeoDataset& ds, const Rect& area, int g, const DeadZoneSpec& radii,
    const std::vector<double>& densities, const PairwiseConfig& cfg) {
  radii.validate();
  if (radii.radii.front() <= 0.0) {
    throw std::invalid_argument("pairwise analysis needs positive radii "
                                "(the sampling lattice is undefined at radius 0)");
  }
  if (densities.empty()) {
    throw std::invalid_argument("pairwise analysis needs at least one density");
  }

  const std::vector<Rect> cells = partition_grid(area, g);
  const int n_cells = g * g;
  std::vector<GeoDataset> cell_data;
  cell_data.reserve(n_cells);
  for (int c = 0; c < n_cells; ++c) {
    cell_data.push_back(cell_dataset(ds, area, g, c));
  }

  std::vector<PairDifferenceSummary> summaries;
  for (std::size_t di = 0; di < densities.size(); ++di) {
    const double density = densities[di];
    PairDifferenceSummary summary;
    summary.density_fraction = density;

    // diffs[radius index] collects result_A - result_B over ordered pairs
    std::vector<std::vector<double>> diffs(radii.radii.size());
    int pair_index = 0;
    for (int a = 0; a < n_cells; ++a) {
      for (int b = 0; b < n_cells; ++b) {
        if (a == b) {
          continue;
        }
        const std::uint64_t pair_seed =
            Rng::derive_stream(cfg.seed, 10000 * (di + 1) + static_cast<std::uint64_t>(pair_index));
        ++pair_index;
        try {
          if (cell_data[a].records.empty() || cell_data[b].records.empty()) {
            throw std::runtime_error("cell without records");
          }
          const GeoDataset sub_a =
              density == 1.0 ? cell_data[a]
                             : subsample_density(cell_data[a], density,
                                                 Rng::derive_stream(pair_seed, 1));
          const SpatialIndex idx_a(sub_a);
          const FoldPlan plan =
              make_folds(sub_a, std::min(cfg.cv_folds, sub_a.size()),
                         Rng::derive_stream(pair_seed, 2));
          // A pair contributes either to every radius or to none, so the
          // radii stay comparable.
          std::vector<double> pair_diffs;
          pair_diffs.reserve(radii.radii.size());
          for (double r : radii.radii) {
            const CvResult res = run_skcv(sub_a, idx_a, plan, r, cfg.model, cfg.threads);
            const double result_a = res.metric(sub_a, cfg.model.task);
            const double result_b = sample_generalize(cell_data[b], cells[b], r, cfg.model);
            pair_diffs.push_back(result_a - result_b);
          }
          for (std::size_t ri = 0; ri < radii.radii.size(); ++ri) {
            diffs[ri].push_back(pair_diffs[ri]);
          }
        } catch (const std::exception& e) {
          summary.skip_log.push_back("pair (" + std::to_string(a) + "," + std::to_string(b) +
                                     ") skipped: " + e.what());
        }
      }
    }

    for (std::size_t ri = 0; ri < radii.radii.size(); ++ri) {
      PairRadiusStat stat;
      stat.r_delta = radii.radii[ri];
      stat.pair_count = static_cast<int>(diffs[ri].size());
      if (stat.pair_count > 0) {
        double mean = 0.0;
        for (double v : diffs[ri]) {
          mean += v;
        }
        mean /= stat.pair_count;
        double ss = 0.0;
        for (double v : diffs[ri]) {
          ss += (v - mean) * (v - mean);
        }
        stat.mean_diff = mean;
        stat.std_diff = std::sqrt(ss / stat.pair_count);
      }
      summary.per_radius.push_back(stat);
    }
    const bool all_empty = std::all_of(summary.per_radius.begin(), summary.per_radius.end(),
                                       [](const PairRadiusStat& s) { return s.pair_count == 0; });
    if (all_empty) {
      throw std::runtime_error("every area pair was skipped; cells are too small for the "
                               "requested folds/radii");
    }
    summaries.push_back(std::move(summary));
  }
  return summaries;
}

}  // namespace spatialcv

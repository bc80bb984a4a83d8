#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spatialcv/core_data.hpp"
#include "spatialcv/cv_engine.hpp"

namespace spatialcv {

struct Rect {
  Coord min{0.0, 0.0};
  Coord max{0.0, 0.0};

  double width() const { return max[0] - min[0]; }
  double height() const { return max[1] - min[1]; }
  void validate() const;
};

Rect bounding_rect(const GeoDataset& ds);

// Proposed measurement sites on a triangular lattice. Site spacing is
// sqrt(3) * covering_radius, the sparsest lattice whose covering radius (the
// farthest any area point can be from its nearest site) still equals
// covering_radius.
struct SamplingPlan {
  std::vector<Coord> sites;
  double covering_radius = 0.0;
  double lattice_spacing = 0.0;
};

// Lattice anchored at the area's min corner, odd rows offset by half a
// spacing, extended one ring beyond the rectangle so coverage holds at the
// edges.
SamplingPlan hex_lattice(const Rect& area, double r_delta);

// Max over a probe grid (pitch meters apart, covering the area) of the
// distance to the nearest site. Verifies the covering property:
// the result never exceeds covering_radius.
double covering_max_gap(const SamplingPlan& plan, const Rect& area, double pitch);

// Sample-generalize: pick, for each lattice site, the nearest dataset record
// (deduplicated) as training; fit the model on those records; return the
// metric over all remaining records.
double sample_generalize(const GeoDataset& ds, const Rect& area, double r_delta,
                         const ModelConfig& model);

// Convenience overload over the dataset's bounding rectangle.
double sample_generalize(const GeoDataset& ds, double r_delta, const ModelConfig& model);

// g x g equal cells tiling the area exactly, row-major from the min corner.
std::vector<Rect> partition_grid(const Rect& area, int g);

// Cell index (row*g + col) containing the coordinate. Records on shared cell
// boundaries go to the cell whose min corner is nearest (the upper/right
// cell); the area's outer max edges fold into the last row/column.
int cell_of(const Rect& area, int g, const Coord& c);

struct PairRadiusStat {
  double r_delta = 0.0;
  double mean_diff = 0.0;  // mean of (result_A - result_B) over ordered pairs
  double std_diff = 0.0;
  int pair_count = 0;
};

struct PairDifferenceSummary {
  double density_fraction = 1.0;
  std::vector<PairRadiusStat> per_radius;
  std::vector<std::string> skip_log;
};

struct PairwiseConfig {
  int cv_folds = 10;
  ModelConfig model;
  std::uint64_t seed = 0;
  int threads = 1;
};

// For each ordered pair (A, B) of distinct grid cells and each radius:
// result_A = SKCV metric on A's records (subsampled to the density),
// result_B = sample-generalize on B's full records; the summary holds the
// mean and standard deviation of result_A - result_B over all pairs.
// For error metrics a positive mean means SKCV is the more pessimistic
// estimate. Radii must be positive (the sampling lattice is undefined at 0).
std::vector<PairDifferenceSummary> pairwise_bias_variance(
    const GeoDataset& ds, const Rect& area, int g, const DeadZoneSpec& radii,
    const std::vector<double>& densities, const PairwiseConfig& cfg);

}  // namespace spatialcv

#pragma once

#include <cstdint>
#include <string>

#include "spatialcv/cv_engine.hpp"
#include "spatialcv/diagnostics.hpp"
#include "spatialcv/sampling_planner.hpp"

namespace spatialcv {

// Shortest round-trip decimal form; keeps report files byte-stable.
std::string format_double(double v);

// FNV-1a over the raw file bytes, as "fnv1a:<16 hex digits>".
std::string file_content_hash(const std::string& path);

// Curve table, one row per radius. Header: r_delta,metric,mean_removed,skipped_folds.
// Radii where every fold was skipped leave the metric cell empty.
void write_curve_csv(const std::string& path, const EvaluationCurve& curve);

// Lag table: lag_center,gamma,pair_count,moran_i. Empty bins leave their
// value cells empty rather than writing zeros.
void write_diagnostics_csv(const std::string& path, const VariogramEstimate& variogram,
                           const CorrelogramEstimate& correlogram);

// Pair-difference table: r_delta,mean_diff,std_diff,pair_count.
void write_pairs_csv(const std::string& path, const PairDifferenceSummary& summary);

// Proposed sites: east,north.
void write_sites_csv(const std::string& path, const SamplingPlan& plan);

}  // namespace spatialcv

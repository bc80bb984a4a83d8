// spatialcv: spatial model-evaluation toolkit CLI.
//
// Commands: diagnose, skcv, rlo, plan, pairs, synth, rerun. Every command
// writes a manifest.json into the output directory first, then its result
// tables; `rerun <manifest>` reproduces a previous run from that file.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spatialcv/core_data.hpp"
#include "spatialcv/cv_engine.hpp"
#include "spatialcv/diagnostics.hpp"
#include "spatialcv/report.hpp"
#include "spatialcv/sampling_planner.hpp"
#include "spatialcv/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spatialcv;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      continue;
    }
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse " + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) {
    throw std::invalid_argument(what + " list is empty");
  }
  return out;
}

ColumnSchema parse_schema(const std::string& text, const std::string& response_kind) {
  ColumnSchema schema;
  if (!text.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      parts.push_back(item);
    }
    if (parts.size() < 3) {
      throw std::invalid_argument(
          "--schema needs at least 'east,north,response'; feature columns may follow");
    }
    schema.east = parts[0];
    schema.north = parts[1];
    schema.response = parts[2];
    schema.features.assign(parts.begin() + 3, parts.end());
  }
  if (response_kind == "categorical") {
    schema.response_kind = ResponseKind::categorical;
  } else if (response_kind == "continuous") {
    schema.response_kind = ResponseKind::continuous;
  } else {
    throw std::invalid_argument("--response-kind must be continuous or categorical");
  }
  return schema;
}

Rect parse_area(const std::string& text) {
  const auto v = parse_double_list(text, "area");
  if (v.size() != 4) {
    throw std::invalid_argument("--area must be 'xmin,ymin,xmax,ymax'");
  }
  Rect r{{v[0], v[1]}, {v[2], v[3]}};
  r.validate();
  return r;
}

FoldSpec parse_folds(const std::string& text) {
  FoldSpec spec;
  if (text == "loo") {
    spec.construction = FoldConstruction::leave_one_out;
    return spec;
  }
  if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
    spec.construction = FoldConstruction::random_k_fold;
    spec.k = std::stoi(text);
    return spec;
  }
  // otherwise: a fold file, one fold per line, comma-separated record ids
  std::ifstream in(text);
  if (!in) {
    throw DataError("cannot open fold file '" + text + "'");
  }
  spec.construction = FoldConstruction::user_supplied;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") {
      continue;
    }
    std::vector<int> fold;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) {
      fold.push_back(std::stoi(item));
    }
    spec.folds.push_back(std::move(fold));
  }
  return spec;
}

// Flat key=value config support: keys mirror long flag names one to one and
// command-line flags win. The file is expanded into extra argv tokens before
// CLI11 parses, skipping keys already present on the command line.
void expand_config_args(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) {
    return;
  }
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open config file '" + path + "'");
  }
  auto has_flag = [&](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) {
        return true;
      }
    }
    return false;
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') {
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw DataError("config file '" + path + "' line " + std::to_string(lineno) +
                      ": expected key=value");
    }
    const std::string flag = "--" + trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (!has_flag(flag)) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
}

struct ManifestWriter {
  fs::path out_dir;
  json manifest;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  ManifestWriter(const std::string& out, const std::string& command, json config,
                 const std::string& data_path) {
    out_dir = out;
    fs::create_directories(out_dir);
    manifest["tool"] = "spatialcv";
    manifest["version"] = kToolVersion;
    manifest["command"] = command;
    manifest["config"] = std::move(config);
    if (!data_path.empty()) {
      manifest["data_hash"] = file_content_hash(data_path);
    }
    manifest["created_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    manifest["skip_log"] = json::array();
    write();  // the manifest exists before any result file
  }

  void write() const {
    std::ofstream out(out_dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }

  void finish(std::vector<std::string> skip_log) {
    manifest["skip_log"] = std::move(skip_log);
    manifest["duration_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - started)
                                  .count();
    write();
  }
};

// Options shared by the dataset-consuming commands.
struct DataOptions {
  std::string data;
  std::string schema_text;
  std::string response_kind = "continuous";

  void attach(CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--data", data, "input dataset CSV");
    if (required) {
      opt->required();
    }
    cmd->add_option("--schema", schema_text,
                    "column roles as 'east,north,response[,feature...]'; "
                    "without feature names every remaining column is a feature");
    cmd->add_option("--response-kind", response_kind, "continuous or categorical")
        ->check(CLI::IsMember({"continuous", "categorical"}));
  }

  GeoDataset load() const {
    return load_csv(data, parse_schema(schema_text, response_kind));
  }

  json to_json() const {
    return json{{"data", data}, {"schema", schema_text}, {"response_kind", response_kind}};
  }
};

Task task_for(const GeoDataset& ds) {
  return ds.response_kind == ResponseKind::categorical ? Task::classification
                                                       : Task::regression;
}

// ---------------------------------------------------------------- diagnose

struct DiagnoseConfig {
  DataOptions data;
  std::string lags = "";
  double lag_max = 0.0;
  double lag_step = 0.0;
  double lag_tol = 0.0;
  std::string out = "out";
};

void run_diagnose(const DiagnoseConfig& cfg) {
  json config = cfg.data.to_json();
  config["lags"] = cfg.lags;
  config["lag_max"] = cfg.lag_max;
  config["lag_step"] = cfg.lag_step;
  config["lag_tol"] = cfg.lag_tol;
  ManifestWriter manifest(cfg.out, "diagnose", config, cfg.data.data);

  const GeoDataset ds = cfg.data.load();
  LagGrid grid;
  if (!cfg.lags.empty()) {
    grid.lag_centers = parse_double_list(cfg.lags, "lag");
    grid.tolerance = cfg.lag_tol;
    grid.validate();
  } else {
    grid = make_lag_grid(cfg.lag_max, cfg.lag_step,
                         cfg.lag_tol > 0.0 ? cfg.lag_tol : cfg.lag_step / 2.0);
  }
  const SpatialIndex idx(ds);
  const auto variogram = semivariogram(ds, idx, grid);
  const auto correlogram = morans_i(ds, idx, grid);
  write_diagnostics_csv((fs::path(cfg.out) / "diagnostics.csv").string(), variogram,
                        correlogram);

  const auto fit = fit_sill_range(variogram);
  json summary;
  summary["sill"] = fit.sill;
  if (std::isfinite(fit.effective_range)) {
    summary["effective_range"] = fit.effective_range;
  } else {
    summary["effective_range"] = nullptr;  // never reached 95% of the sill
  }
  summary["baseline"] = correlogram.baseline;
  std::ofstream(fs::path(cfg.out) / "summary.json") << summary.dump(2) << '\n';
  manifest.finish({});
}

// ---------------------------------------------------------------- skcv / rlo

struct SweepCliConfig {
  DataOptions data;
  std::string radii = "0";
  std::string densities = "1";
  std::string folds = "10";
  int k = 9;
  std::string standardize = "per-fold";
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out = "out";
};

void run_sweep_command(const SweepCliConfig& cfg, CvMode mode) {
  json config = cfg.data.to_json();
  config["radii"] = cfg.radii;
  config["densities"] = cfg.densities;
  config["folds"] = cfg.folds;
  config["k"] = cfg.k;
  config["standardize"] = cfg.standardize;
  config["seed"] = cfg.seed;
  config["threads"] = cfg.threads;
  ManifestWriter manifest(cfg.out, mode == CvMode::skcv ? "skcv" : "rlo", config,
                          cfg.data.data);

  const GeoDataset ds = cfg.data.load();
  SweepConfig sweep_cfg;
  sweep_cfg.radii.radii = parse_double_list(cfg.radii, "radius");
  sweep_cfg.radii.validate();
  sweep_cfg.densities = parse_double_list(cfg.densities, "density");
  sweep_cfg.mode = mode;
  sweep_cfg.folds = parse_folds(cfg.folds);
  sweep_cfg.model.k = cfg.k;
  sweep_cfg.model.task = task_for(ds);
  if (cfg.standardize == "global") {
    sweep_cfg.model.scope = StandardizeScope::global;
  } else if (cfg.standardize != "per-fold") {
    throw std::invalid_argument("--standardize must be per-fold or global");
  }
  sweep_cfg.seed = cfg.seed;
  sweep_cfg.threads = cfg.threads;

  const auto curves = sweep(ds, sweep_cfg);
  std::vector<std::string> skip_log;
  for (const auto& curve : curves) {
    const std::string name = "curve_density_" + format_double(curve.density_fraction) + ".csv";
    write_curve_csv((fs::path(cfg.out) / name).string(), curve);
    for (const auto& p : curve.points) {
      if (p.skipped_folds > 0) {
        skip_log.push_back("density " + format_double(curve.density_fraction) + ", r_delta " +
                           format_double(p.r_delta) + ": " + std::to_string(p.skipped_folds) +
                           " fold(s) skipped");
      }
    }
  }
  manifest.finish(std::move(skip_log));
}

// ---------------------------------------------------------------- plan

struct PlanConfig {
  DataOptions data;   // optional; used for the default area
  std::string area;   // xmin,ymin,xmax,ymax
  double r_delta = 0.0;
  std::string curve;  // curve CSV for target inversion
  double target = 0.0;
  bool has_target = false;
  std::string metric = "rmse";
  std::string out = "out";
};

// Largest r_delta whose (piecewise-linear) curve value still meets the target:
// <= target for rmse, >= target for accuracy.
double invert_curve(const std::string& path, double target, bool smaller_is_better) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open curve file '" + path + "'");
  }
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::pair<double, double>> pts;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::stringstream ss(line);
    std::string r_text, m_text;
    std::getline(ss, r_text, ',');
    std::getline(ss, m_text, ',');
    if (m_text.empty()) {
      continue;  // radius where every fold was skipped
    }
    pts.emplace_back(std::stod(r_text), std::stod(m_text));
  }
  if (pts.empty()) {
    throw std::runtime_error("curve file has no usable points");
  }
  auto meets = [&](double v) { return smaller_is_better ? v <= target : v >= target; };

  for (std::size_t i = pts.size(); i-- > 0;) {
    if (meets(pts[i].second)) {
      if (i + 1 < pts.size()) {
        // the curve crosses the target inside (r_i, r_{i+1}); interpolate
        const auto [r0, v0] = pts[i];
        const auto [r1, v1] = pts[i + 1];
        if (v1 != v0) {
          return r0 + (target - v0) * (r1 - r0) / (v1 - v0);
        }
      }
      return pts[i].first;
    }
  }
  double best = pts[0].second, worst = pts[0].second;
  for (const auto& [r, v] : pts) {
    best = smaller_is_better ? std::min(best, v) : std::max(best, v);
    worst = smaller_is_better ? std::max(worst, v) : std::min(worst, v);
  }
  throw std::runtime_error("target " + format_double(target) +
                           " is not achievable; curve spans [" + format_double(best) + ", " +
                           format_double(worst) + "]");
}

void run_plan(const PlanConfig& cfg) {
  json config;
  config["data"] = cfg.data.data;
  config["schema"] = cfg.data.schema_text;
  config["response_kind"] = cfg.data.response_kind;
  config["area"] = cfg.area;
  config["r_delta"] = cfg.r_delta;
  config["curve"] = cfg.curve;
  if (cfg.has_target) {
    config["target"] = cfg.target;
  }
  config["metric"] = cfg.metric;
  ManifestWriter manifest(cfg.out, "plan", config, cfg.data.data);

  Rect area;
  if (!cfg.area.empty()) {
    area = parse_area(cfg.area);
  } else if (!cfg.data.data.empty()) {
    area = bounding_rect(cfg.data.load());
  } else {
    throw std::invalid_argument("plan needs --area or --data to define the target area");
  }

  double r = cfg.r_delta;
  json summary;
  if (cfg.has_target) {
    if (cfg.curve.empty()) {
      throw std::invalid_argument("--target requires --curve");
    }
    r = invert_curve(cfg.curve, cfg.target, cfg.metric == "rmse");
    summary["target"] = cfg.target;
  }
  if (!(r > 0.0)) {
    throw std::invalid_argument("plan needs --r-delta > 0 or a --curve/--target pair");
  }

  const auto plan = hex_lattice(area, r);
  write_sites_csv((fs::path(cfg.out) / "sites.csv").string(), plan);
  summary["r_delta"] = r;
  summary["lattice_spacing"] = plan.lattice_spacing;
  summary["covering_radius"] = plan.covering_radius;
  summary["site_count"] = plan.sites.size();
  summary["area"] = {area.min[0], area.min[1], area.max[0], area.max[1]};
  std::ofstream(fs::path(cfg.out) / "plan.json") << summary.dump(2) << '\n';
  manifest.finish({});
}

// ---------------------------------------------------------------- pairs

struct PairsConfig {
  DataOptions data;
  std::string area;
  int grid = 3;
  std::string radii = "";
  std::string densities = "1";
  int folds = 10;
  int k = 9;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out = "out";
};

void run_pairs(const PairsConfig& cfg) {
  json config = cfg.data.to_json();
  config["area"] = cfg.area;
  config["grid"] = cfg.grid;
  config["radii"] = cfg.radii;
  config["densities"] = cfg.densities;
  config["folds"] = cfg.folds;
  config["k"] = cfg.k;
  config["seed"] = cfg.seed;
  config["threads"] = cfg.threads;
  ManifestWriter manifest(cfg.out, "pairs", config, cfg.data.data);

  const GeoDataset ds = cfg.data.load();
  const Rect area = cfg.area.empty() ? bounding_rect(ds) : parse_area(cfg.area);
  DeadZoneSpec radii;
  radii.radii = parse_double_list(cfg.radii, "radius");
  radii.validate();
  PairwiseConfig pair_cfg;
  pair_cfg.cv_folds = cfg.folds;
  pair_cfg.model.k = cfg.k;
  pair_cfg.model.task = task_for(ds);
  pair_cfg.seed = cfg.seed;
  pair_cfg.threads = cfg.threads;

  const auto summaries = pairwise_bias_variance(ds, area, cfg.grid, radii,
                                                parse_double_list(cfg.densities, "density"),
                                                pair_cfg);
  std::vector<std::string> skip_log;
  for (const auto& summary : summaries) {
    const std::string name =
        "pairs_density_" + format_double(summary.density_fraction) + ".csv";
    write_pairs_csv((fs::path(cfg.out) / name).string(), summary);
    skip_log.insert(skip_log.end(), summary.skip_log.begin(), summary.skip_log.end());
  }
  manifest.finish(std::move(skip_log));
}

// ---------------------------------------------------------------- synth

struct SynthConfig {
  std::string area = "0,0,1000,1000";
  int n_points = 1000;
  std::string model = "exponential";
  double sill = 1.0;
  double range = 50.0;
  double nugget = 0.0;
  int n_features = 2;
  double feature_noise = 0.7;
  double feature_noise_range = 0.0;
  std::string task = "regression";
  int classes = 3;
  std::uint64_t seed = 0;
  std::string out = "out";
};

void run_synth(const SynthConfig& cfg) {
  json config;
  config["area"] = cfg.area;
  config["n_points"] = cfg.n_points;
  config["model"] = cfg.model;
  config["sill"] = cfg.sill;
  config["range"] = cfg.range;
  config["nugget"] = cfg.nugget;
  config["n_features"] = cfg.n_features;
  config["feature_noise"] = cfg.feature_noise;
  config["feature_noise_range"] = cfg.feature_noise_range;
  config["task"] = cfg.task;
  config["classes"] = cfg.classes;
  config["seed"] = cfg.seed;
  ManifestWriter manifest(cfg.out, "synth", config, "");

  FieldSpec spec;
  spec.area = parse_area(cfg.area);
  spec.n_points = cfg.n_points;
  if (cfg.model == "exponential") {
    spec.model = CovModel::exponential;
  } else if (cfg.model == "gaussian") {
    spec.model = CovModel::gaussian_cov;
  } else if (cfg.model == "nugget") {
    spec.model = CovModel::nugget_only;
  } else {
    throw std::invalid_argument("--model must be exponential, gaussian or nugget");
  }
  spec.sill = cfg.sill;
  spec.range = cfg.range;
  spec.nugget = cfg.nugget;
  spec.n_features = cfg.n_features;
  spec.feature_noise = cfg.feature_noise;
  spec.feature_noise_range = cfg.feature_noise_range;
  spec.seed = cfg.seed;
  if (cfg.task == "classification") {
    spec.task = Task::classification;
    spec.n_classes = cfg.classes;
  } else if (cfg.task != "regression") {
    throw std::invalid_argument("--task must be regression or classification");
  }

  const GeoDataset ds = generate_field(spec);
  ColumnSchema schema;
  schema.response_kind = ds.response_kind;
  write_csv(ds, (fs::path(cfg.out) / "data.csv").string(), schema);

  json sidecar = config;
  sidecar["record_count"] = ds.size();
  std::ofstream(fs::path(cfg.out) / "field.json") << sidecar.dump(2) << '\n';
  manifest.finish({});
}

// ---------------------------------------------------------------- rerun

int dispatch(const std::string& command, const json& config, const std::string& out_dir);

void run_rerun(const std::string& manifest_path, const std::string& out_dir) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw DataError("cannot open manifest '" + manifest_path + "'");
  }
  json manifest;
  in >> manifest;
  const std::string command = manifest.at("command").get<std::string>();
  if (command == "rerun") {
    throw std::invalid_argument("manifest does not describe a rerunnable command");
  }
  dispatch(command, manifest.at("config"), out_dir);
}

template <typename T>
T value_or(const json& j, const char* key, T fallback) {
  if (j.contains(key) && !j.at(key).is_null()) {
    return j.at(key).get<T>();
  }
  return fallback;
}

int dispatch(const std::string& command, const json& config, const std::string& out_dir) {
  if (command == "diagnose") {
    DiagnoseConfig cfg;
    cfg.data.data = config.at("data").get<std::string>();
    cfg.data.schema_text = value_or<std::string>(config, "schema", "");
    cfg.data.response_kind = value_or<std::string>(config, "response_kind", "continuous");
    cfg.lags = value_or<std::string>(config, "lags", "");
    cfg.lag_max = value_or<double>(config, "lag_max", 0.0);
    cfg.lag_step = value_or<double>(config, "lag_step", 0.0);
    cfg.lag_tol = value_or<double>(config, "lag_tol", 0.0);
    cfg.out = out_dir;
    run_diagnose(cfg);
    return 0;
  }
  if (command == "skcv" || command == "rlo") {
    SweepCliConfig cfg;
    cfg.data.data = config.at("data").get<std::string>();
    cfg.data.schema_text = value_or<std::string>(config, "schema", "");
    cfg.data.response_kind = value_or<std::string>(config, "response_kind", "continuous");
    cfg.radii = config.at("radii").get<std::string>();
    cfg.densities = value_or<std::string>(config, "densities", "1");
    cfg.folds = value_or<std::string>(config, "folds", "10");
    cfg.k = value_or<int>(config, "k", 9);
    cfg.standardize = value_or<std::string>(config, "standardize", "per-fold");
    cfg.seed = value_or<std::uint64_t>(config, "seed", 0);
    cfg.threads = value_or<int>(config, "threads", 1);
    cfg.out = out_dir;
    run_sweep_command(cfg, command == "skcv" ? CvMode::skcv : CvMode::rlo);
    return 0;
  }
  if (command == "plan") {
    PlanConfig cfg;
    cfg.data.data = value_or<std::string>(config, "data", "");
    cfg.data.schema_text = value_or<std::string>(config, "schema", "");
    cfg.data.response_kind = value_or<std::string>(config, "response_kind", "continuous");
    cfg.area = value_or<std::string>(config, "area", "");
    cfg.r_delta = value_or<double>(config, "r_delta", 0.0);
    cfg.curve = value_or<std::string>(config, "curve", "");
    if (config.contains("target")) {
      cfg.target = config.at("target").get<double>();
      cfg.has_target = true;
    }
    cfg.metric = value_or<std::string>(config, "metric", "rmse");
    cfg.out = out_dir;
    run_plan(cfg);
    return 0;
  }
  if (command == "pairs") {
    PairsConfig cfg;
    cfg.data.data = config.at("data").get<std::string>();
    cfg.data.schema_text = value_or<std::string>(config, "schema", "");
    cfg.data.response_kind = value_or<std::string>(config, "response_kind", "continuous");
    cfg.area = value_or<std::string>(config, "area", "");
    cfg.grid = value_or<int>(config, "grid", 3);
    cfg.radii = config.at("radii").get<std::string>();
    cfg.densities = value_or<std::string>(config, "densities", "1");
    cfg.folds = value_or<int>(config, "folds", 10);
    cfg.k = value_or<int>(config, "k", 9);
    cfg.seed = value_or<std::uint64_t>(config, "seed", 0);
    cfg.threads = value_or<int>(config, "threads", 1);
    cfg.out = out_dir;
    run_pairs(cfg);
    return 0;
  }
  if (command == "synth") {
    SynthConfig cfg;
    cfg.area = value_or<std::string>(config, "area", "0,0,1000,1000");
    cfg.n_points = value_or<int>(config, "n_points", 1000);
    cfg.model = value_or<std::string>(config, "model", "exponential");
    cfg.sill = value_or<double>(config, "sill", 1.0);
    cfg.range = value_or<double>(config, "range", 50.0);
    cfg.nugget = value_or<double>(config, "nugget", 0.0);
    cfg.n_features = value_or<int>(config, "n_features", 2);
    cfg.feature_noise = value_or<double>(config, "feature_noise", 0.7);
    cfg.feature_noise_range = value_or<double>(config, "feature_noise_range", 0.0);
    cfg.task = value_or<std::string>(config, "task", "regression");
    cfg.classes = value_or<int>(config, "classes", 3);
    cfg.seed = value_or<std::uint64_t>(config, "seed", 0);
    cfg.out = out_dir;
    run_synth(cfg);
    return 0;
  }
  throw std::invalid_argument("unknown command '" + command + "' in manifest");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spatialcv: spatial cross validation and sampling-density toolkit"};
  app.name("spatialcv");
  app.require_subcommand(1);
  std::string config_path;

  // diagnose
  DiagnoseConfig diag;
  auto* cmd_diag = app.add_subcommand(
      "diagnose", "semivariogram and Moran's I correlogram of the response");
  diag.data.attach(cmd_diag);
  cmd_diag->add_option("--lags", diag.lags, "explicit lag centers, e.g. '10,20,30'");
  cmd_diag->add_option("--lag-max", diag.lag_max, "largest lag center (with --lag-step)");
  cmd_diag->add_option("--lag-step", diag.lag_step, "lag center spacing");
  cmd_diag->add_option("--lag-tol", diag.lag_tol, "lag tolerance t (default: step/2)");
  cmd_diag->add_option("--out", diag.out, "output directory")->required();
  cmd_diag->add_option("--config", config_path, "flat key=value config file; flags override");

  // skcv / rlo
  SweepCliConfig sweep_cfg;
  auto add_sweep_options = [&](CLI::App* cmd) {
    sweep_cfg.data.attach(cmd);
    cmd->add_option("--radii", sweep_cfg.radii, "dead-zone radii in meters, e.g. '0,10,20'")
        ->required();
    cmd->add_option("--densities", sweep_cfg.densities,
                    "spatial density fractions, e.g. '1,0.5,0.25'");
    cmd->add_option("--folds", sweep_cfg.folds, "fold count, 'loo', or a fold file path");
    cmd->add_option("--k", sweep_cfg.k, "kNN neighbor count");
    cmd->add_option("--standardize", sweep_cfg.standardize,
                    "feature standardization scope: per-fold or global")
        ->check(CLI::IsMember({"per-fold", "global"}));
    cmd->add_option("--seed", sweep_cfg.seed, "random seed");
    cmd->add_option("--threads", sweep_cfg.threads, "worker threads for fold evaluation");
    cmd->add_option("--out", sweep_cfg.out, "output directory")->required();
    cmd->add_option("--config", config_path, "flat key=value config file; flags override");
  };
  auto* cmd_skcv = app.add_subcommand(
      "skcv", "spatial k-fold cross validation sweep over dead-zone radii");
  add_sweep_options(cmd_skcv);
  auto* cmd_rlo = app.add_subcommand(
      "rlo", "random-leave-out control sweep (same removal counts, random picks)");
  add_sweep_options(cmd_rlo);

  // plan
  PlanConfig plan_cfg;
  auto* cmd_plan = app.add_subcommand(
      "plan", "hexagonal sampling plan for a target area (direct radius or curve inversion)");
  plan_cfg.data.attach(cmd_plan, /*required=*/false);
  cmd_plan->add_option("--area", plan_cfg.area, "target area 'xmin,ymin,xmax,ymax'");
  cmd_plan->add_option("--r-delta", plan_cfg.r_delta, "covering radius in meters");
  cmd_plan->add_option("--curve", plan_cfg.curve, "curve CSV from a skcv run");
  auto* target_opt =
      cmd_plan->add_option("--target", plan_cfg.target, "required metric level to invert");
  cmd_plan->add_option("--metric", plan_cfg.metric, "metric in the curve: rmse or accuracy")
      ->check(CLI::IsMember({"rmse", "accuracy"}));
  cmd_plan->add_option("--out", plan_cfg.out, "output directory")->required();
  cmd_plan->add_option("--config", config_path, "flat key=value config file; flags override");

  // pairs
  PairsConfig pairs_cfg;
  auto* cmd_pairs = app.add_subcommand(
      "pairs", "area-pair bias-variance analysis: SKCV estimate vs sample-generalize");
  pairs_cfg.data.attach(cmd_pairs);
  cmd_pairs->add_option("--area", pairs_cfg.area,
                        "partition area 'xmin,ymin,xmax,ymax' (default: data bounds)");
  cmd_pairs->add_option("--grid", pairs_cfg.grid, "partition into grid x grid cells");
  cmd_pairs->add_option("--radii", pairs_cfg.radii, "positive radii, e.g. '20,30,40'")
      ->required();
  cmd_pairs->add_option("--densities", pairs_cfg.densities, "density fractions for the SKCV side");
  cmd_pairs->add_option("--folds", pairs_cfg.folds, "fold count for the SKCV side");
  cmd_pairs->add_option("--k", pairs_cfg.k, "kNN neighbor count");
  cmd_pairs->add_option("--seed", pairs_cfg.seed, "random seed");
  cmd_pairs->add_option("--threads", pairs_cfg.threads, "worker threads");
  cmd_pairs->add_option("--out", pairs_cfg.out, "output directory")->required();
  cmd_pairs->add_option("--config", config_path, "flat key=value config file; flags override");

  // synth
  SynthConfig synth_cfg;
  auto* cmd_synth = app.add_subcommand(
      "synth", "generate a synthetic autocorrelated dataset (Gaussian random field)");
  cmd_synth->add_option("--area", synth_cfg.area, "field area 'xmin,ymin,xmax,ymax'");
  cmd_synth->add_option("--n-points", synth_cfg.n_points, "number of records");
  cmd_synth->add_option("--model", synth_cfg.model, "exponential, gaussian or nugget")
      ->check(CLI::IsMember({"exponential", "gaussian", "nugget"}));
  cmd_synth->add_option("--sill", synth_cfg.sill, "field variance sigma^2");
  cmd_synth->add_option("--range", synth_cfg.range, "correlation range rho in meters");
  cmd_synth->add_option("--nugget", synth_cfg.nugget, "nugget variance");
  cmd_synth->add_option("--n-features", synth_cfg.n_features, "number of feature columns");
  cmd_synth->add_option("--feature-noise", synth_cfg.feature_noise,
                        "stddev of per-feature noise around the latent response");
  cmd_synth->add_option("--feature-noise-range", synth_cfg.feature_noise_range,
                        "correlation range of the feature noise (0 = white)");
  cmd_synth->add_option("--task", synth_cfg.task, "regression or classification")
      ->check(CLI::IsMember({"regression", "classification"}));
  cmd_synth->add_option("--classes", synth_cfg.classes, "class count for classification");
  cmd_synth->add_option("--seed", synth_cfg.seed, "random seed");
  cmd_synth->add_option("--out", synth_cfg.out, "output directory")->required();
  cmd_synth->add_option("--config", config_path, "flat key=value config file; flags override");

  // rerun
  std::string rerun_manifest, rerun_out;
  auto* cmd_rerun = app.add_subcommand("rerun", "reproduce a run from its manifest.json");
  cmd_rerun->add_option("manifest", rerun_manifest, "path to manifest.json")->required();
  cmd_rerun->add_option("--out", rerun_out, "output directory")->required();

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    expand_config_args(args);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::reverse(args.begin(), args.end());  // CLI11's vector overload wants reversed argv
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_diag->parsed()) {
      run_diagnose(diag);
    } else if (cmd_skcv->parsed()) {
      run_sweep_command(sweep_cfg, CvMode::skcv);
    } else if (cmd_rlo->parsed()) {
      run_sweep_command(sweep_cfg, CvMode::rlo);
    } else if (cmd_plan->parsed()) {
      plan_cfg.has_target = target_opt->count() > 0;
      run_plan(plan_cfg);
    } else if (cmd_pairs->parsed()) {
      run_pairs(pairs_cfg);
    } else if (cmd_synth->parsed()) {
      run_synth(synth_cfg);
    } else if (cmd_rerun->parsed()) {
      run_rerun(rerun_manifest, rerun_out);
    }
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

#include "spatialcv/report.hpp"

#include <charconv>
#include <fstream>

namespace spatialcv {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string file_content_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open '" + path + "' for hashing");
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char chunk[4096];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(chunk[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  auto [ptr, ec] = std::to_chars(hex, hex + sizeof(hex), h, 16);
  (void)ec;
  std::string digits(hex, ptr);
  return "fnv1a:" + std::string(16 - digits.size(), '0') + digits;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path + "'");
  }
  return out;
}

}  // namespace

void write_curve_csv(const std::string& path, const EvaluationCurve& curve) {
  auto out = open_out(path);
  out << "r_delta,metric,mean_removed,skipped_folds\n";
  for (const auto& p : curve.points) {
    out << format_double(p.r_delta) << ',';
    if (p.metric.has_value()) {
      out << format_double(*p.metric);
    }
    out << ',' << format_double(p.mean_removed) << ',' << p.skipped_folds << '\n';
  }
}

void write_diagnostics_csv(const std::string& path, const VariogramEstimate& variogram,
                           const CorrelogramEstimate& correlogram) {
  auto out = open_out(path);
  out << "lag_center,gamma,pair_count,moran_i\n";
  for (std::size_t i = 0; i < variogram.bins.size(); ++i) {
    const auto& v = variogram.bins[i];
    out << format_double(v.lag_center) << ',';
    if (v.gamma.has_value()) {
      out << format_double(*v.gamma);
    }
    out << ',' << v.pair_count << ',';
    if (i < correlogram.bins.size() && correlogram.bins[i].moran_i.has_value()) {
      out << format_double(*correlogram.bins[i].moran_i);
    }
    out << '\n';
  }
}

void write_pairs_csv(const std::string& path, const PairDifferenceSummary& summary) {
  auto out = open_out(path);
  out << "r_delta,mean_diff,std_diff,pair_count\n";
  for (const auto& s : summary.per_radius) {
    out << format_double(s.r_delta) << ',';
    if (s.pair_count > 0) {
      out << format_double(s.mean_diff) << ',' << format_double(s.std_diff);
    } else {
      out << ',';
    }
    out << ',' << s.pair_count << '\n';
  }
}

void write_sites_csv(const std::string& path, const SamplingPlan& plan) {
  auto out = open_out(path);
  out << "east,north\n";
  for (const auto& s : plan.sites) {
    out << format_double(s[0]) << ',' << format_double(s[1]) << '\n';
  }
}

}  // namespace spatialcv

#include "spatialcv/rng.hpp"

#include <cmath>

namespace spatialcv {

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_ = v * f;
  has_cached_ = true;
  return u * f;
}

std::uint64_t Rng::derive_stream(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the combined value; two rounds keep streams well apart
  // even for adjacent (seed, stream) pairs.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  for (int i = 0; i < 2; ++i) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
  }
  return z;
}

}  // namespace spatialcv

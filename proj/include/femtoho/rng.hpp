#pragma once

#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace femtoho {

/// Independent random streams. Each purpose draws from its own engine so that
/// enabling one feature (say, measurement noise) never shifts the draws of
/// another (placement, shadowing, mobility).
enum class StreamPurpose : std::uint64_t {
  Placement = 1,
  Shadowing = 2,
  Mobility = 3,
  MeasurementNoise = 4,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, StreamPurpose purpose, std::uint64_t id) {
  return splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(purpose)) ^ id);
}

/// mt19937_64 with portable uniform/normal conversions. The standard
/// distributions are implementation-defined, which would break bit-exact
/// reproducibility across toolchains.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t id)
      : engine_(stream_seed(seed, purpose, id)) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

  /// Standard normal. Boost's ziggurat is fully specified in its headers, so
  /// draws match across toolchains for the same engine output.
  double normal() { return normal_(engine_); }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

 private:
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
};

}  // namespace femtoho

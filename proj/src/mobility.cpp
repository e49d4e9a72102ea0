#include "femtoho/mobility.hpp"

#include <cmath>
#include <numbers>

namespace femtoho::mobility {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Folds a coordinate back into [lo, hi]; returns true when an odd number of
// reflections happened (velocity component flips).
bool reflect(double& v, double lo, double hi) {
  bool flipped = false;
  for (int guard = 0; guard < 64 && (v < lo || v > hi); ++guard) {
    v = v < lo ? 2.0 * lo - v : 2.0 * hi - v;
    flipped = !flipped;
  }
  return flipped;
}

}  // namespace

double normalize_heading(double rad) {
  double h = std::fmod(rad, kTwoPi);
  if (h < 0.0) h += kTwoPi;
  if (h >= kTwoPi) h = 0.0;
  return h;
}

MobilityState step(const MobilityState& state, double dt, const MobilityParams& params,
                   RandomStream& rng) {
  MobilityState next = state;
  const double dist = state.speed_kmh / 3.6 * dt;
  if (dist > 0.0) {
    double vx = std::cos(state.heading_rad);
    double vy = std::sin(state.heading_rad);
    Point p{state.position.x + dist * vx, state.position.y + dist * vy};
    const bool flip_x = reflect(p.x, params.bounds.min.x, params.bounds.max.x);
    const bool flip_y = reflect(p.y, params.bounds.min.y, params.bounds.max.y);
    next.position = p;
    if (flip_x || flip_y) {
      if (flip_x) vx = -vx;
      if (flip_y) vy = -vy;
      next.heading_rad = normalize_heading(std::atan2(vy, vx));
    }
  }

  next.epoch_remaining_s = state.epoch_remaining_s - dt;
  if (next.epoch_remaining_s <= 1e-9) {
    next.heading_rad = rng.uniform(0.0, kTwoPi);
    next.epoch_remaining_s = params.epoch_s;
  }
  return next;
}

SpeedClass speed_class(double speed_kmh, double low_kmh, double high_kmh) {
  if (speed_kmh < low_kmh) return SpeedClass::Low;
  if (speed_kmh > high_kmh) return SpeedClass::High;
  return SpeedClass::Medium;
}

}  // namespace femtoho::mobility

#pragma once

#include "femtoho/geometry.hpp"
#include "femtoho/rng.hpp"

namespace femtoho {

struct MobilityState {
  Point position;
  double speed_kmh = 0.0;
  double heading_rad = 0.0;
  double epoch_remaining_s = 0.0;
};

/// Random-walk parameters: straight-line epochs of fixed length with a fresh
/// uniform heading at each epoch boundary, reflecting off `bounds`.
struct MobilityParams {
  double epoch_s = 5.0;
  Box bounds;
};

enum class SpeedClass { Low, Medium, High };

namespace mobility {

MobilityState step(const MobilityState& state, double dt, const MobilityParams& params,
                   RandomStream& rng);

/// Low below `low_kmh`, High above `high_kmh`, Medium in between (both ends inclusive).
SpeedClass speed_class(double speed_kmh, double low_kmh = 5.0, double high_kmh = 10.0);

double normalize_heading(double rad);

}  // namespace mobility
}  // namespace femtoho

#pragma once

#include <cmath>

namespace femtoho {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double distance_squared(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct Segment {
  Point a;
  Point b;
};

/// Axis-aligned rectangle, [min.x, max.x] x [min.y, max.y].
struct Box {
  Point min;
  Point max;

  bool contains(Point p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  bool strictly_contains(Point p) const {
    return p.x > min.x && p.x < max.x && p.y > min.y && p.y < max.y;
  }
  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  Box expanded(double margin) const {
    return {{min.x - margin, min.y - margin}, {max.x + margin, max.y + margin}};
  }
};

// True when the two segments cross at a single interior point of both.
// Touching at an endpoint and collinear overlap do not count.
bool segments_cross(const Segment& s, const Segment& t);

}  // namespace femtoho

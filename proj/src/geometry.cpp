#include "femtoho/geometry.hpp"

namespace femtoho {

namespace {

double orient(Point a, Point b, Point c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace

bool segments_cross(const Segment& s, const Segment& t) {
  const double o1 = orient(s.a, s.b, t.a);
  const double o2 = orient(s.a, s.b, t.b);
  const double o3 = orient(t.a, t.b, s.a);
  const double o4 = orient(t.a, t.b, s.b);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) &&
         ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

}  // namespace femtoho

#include "femtoho/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <numbers>

#include "femtoho/rng.hpp"

namespace femtoho {

bool Ue::allows(const Cell& cell) const {
  if (cell.access == Access::Open) return true;
  return std::binary_search(whitelist.begin(), whitelist.end(), cell.id);
}

Box Building::apartment(int row, int col) const {
  const Point lo{bounds.min.x + col * apartment_side_m, bounds.min.y + row * apartment_side_m};
  return {lo, {lo.x + apartment_side_m, lo.y + apartment_side_m}};
}

int Building::apartment_at(Point p) const {
  if (!bounds.contains(p)) return -1;
  const int col = std::min(cols - 1, static_cast<int>((p.x - bounds.min.x) / apartment_side_m));
  const int row = std::min(rows - 1, static_cast<int>((p.y - bounds.min.y) / apartment_side_m));
  return row * cols + col;
}

namespace {

Building make_building(const SimConfig& c) {
  Building b;
  b.rows = c.grid_rows;
  b.cols = c.grid_cols;
  b.apartment_side_m = c.apartment_side_m;
  const double half_h = 0.5 * c.grid_rows * c.apartment_side_m;
  b.bounds = {{c.enb_fap_distance_m, -half_h},
              {c.enb_fap_distance_m + c.grid_cols * c.apartment_side_m, half_h}};
  for (int j = 0; j <= b.cols; ++j) {
    const double x = b.bounds.min.x + j * c.apartment_side_m;
    b.walls.push_back({{x, b.bounds.min.y}, {x, b.bounds.max.y}});
  }
  for (int i = 0; i <= b.rows; ++i) {
    const double y = b.bounds.min.y + i * c.apartment_side_m;
    b.walls.push_back({{b.bounds.min.x, y}, {b.bounds.max.x, y}});
  }
  return b;
}

Point fap_position(const Box& apt, int index, int per_apartment) {
  const Point center{0.5 * (apt.min.x + apt.max.x), 0.5 * (apt.min.y + apt.max.y)};
  if (per_apartment == 1) return center;
  const double r = 0.25 * apt.width();
  const double a = 2.0 * std::numbers::pi * index / per_apartment;
  return {center.x + r * std::cos(a), center.y + r * std::sin(a)};
}

Point uniform_in(RandomStream& rng, const Box& box, double inset) {
  return {rng.uniform(box.min.x + inset, box.max.x - inset),
          rng.uniform(box.min.y + inset, box.max.y - inset)};
}

}  // namespace

Scenario build_scenario(const SimConfig& config) {
  require_valid(config);

  Scenario s;
  s.config = config;
  s.building = make_building(config);
  s.bbox = s.building.bounds.expanded(config.bbox_margin_m);

  RandomStream rng(config.seed, StreamPurpose::Placement, 0);

  Cell macro;
  macro.id = kMacroCellId;
  macro.kind = CellKind::Macro;
  macro.tx_power_dbm = config.macro_tx_dbm;
  macro.access = Access::Open;
  macro.capacity_ues = config.macro_capacity_ues;
  s.cells.push_back(macro);

  for (int row = 0; row < config.grid_rows; ++row) {
    for (int col = 0; col < config.grid_cols; ++col) {
      const Box apt = s.building.apartment(row, col);
      for (int k = 0; k < config.faps_per_apartment; ++k) {
        Cell fap;
        fap.id = static_cast<CellId>(s.cells.size());
        fap.kind = CellKind::Femto;
        fap.position = fap_position(apt, k, config.faps_per_apartment);
        fap.tx_power_dbm = config.fap_tx_dbm;
        fap.access = Access::ClosedCsg;
        fap.capacity_ues = config.effective_fap_capacity();
        fap.apartment = row * config.grid_cols + col;
        s.cells.push_back(fap);
      }
    }
  }

  int real_time_seen = 0;
  auto assign_traffic = [&](Ue& ue) {
    const bool nrt = rng.uniform() < config.nonrealtime_fraction;
    if (nrt) {
      ue.traffic = Traffic::NonRealTime;
      ue.required_rate_bps = config.nonrealtime_rate_bps;
    } else {
      ue.traffic = (real_time_seen++ % 2 == 0) ? Traffic::RealTimeVoip : Traffic::RealTimeVideo;
      ue.required_rate_bps =
          ue.traffic == Traffic::RealTimeVoip ? config.voip_rate_bps : config.video_rate_bps;
    }
  };

  constexpr double kInset = 1e-3;
  for (std::size_t c = 1; c < s.cells.size(); ++c) {
    Cell& fap = s.cells[c];
    const int row = fap.apartment / config.grid_cols;
    const int col = fap.apartment % config.grid_cols;
    const Box apt = s.building.apartment(row, col);
    for (int u = 0; u < config.csg_users_per_fap; ++u) {
      Ue ue;
      ue.id = static_cast<UeId>(s.ues.size());
      ue.role = UeRole::Fue;
      ue.position = uniform_in(rng, apt, kInset);
      ue.speed_kmh = config.fue_speed_kmh;
      ue.heading_rad = rng.uniform(0.0, 2.0 * std::numbers::pi);
      ue.whitelist = {fap.id};
      ue.home_fap = fap.id;
      assign_traffic(ue);
      fap.csg_members.push_back(ue.id);
      s.ues.push_back(std::move(ue));
    }
  }

  const Box annulus = s.building.bounds.expanded(config.mue_annulus_m);
  for (int m = 0; m < config.mue_count; ++m) {
    Ue ue;
    ue.id = static_cast<UeId>(s.ues.size());
    ue.role = UeRole::Mue;
    do {
      ue.position = uniform_in(rng, annulus, 0.0);
    } while (s.building.contains(ue.position));
    ue.speed_kmh = config.mue_speeds_kmh[rng.below(config.mue_speeds_kmh.size())];
    ue.heading_rad = rng.uniform(0.0, 2.0 * std::numbers::pi);
    if (config.mue_csg_member) {
      for (std::size_t c = 1; c < s.cells.size(); ++c) {
        ue.whitelist.push_back(s.cells[c].id);
        s.cells[c].csg_members.push_back(ue.id);
      }
    }
    assign_traffic(ue);
    s.ues.push_back(std::move(ue));
  }
  return s;
}

namespace {

// Crossings of the path with the grid lines perpendicular to one axis.
// `u` runs along that axis, `v` along the other; lines sit at
// u = lo + k * side for k = 0..count and span v in [v_lo, v_hi]. Same
// predicate as segments_cross: strict crossing at interior points only.
int axis_crossings(double u0, double v0, double u1, double v1, double lo, double side, int count,
                   double v_lo, double v_hi) {
  if (u0 == u1) return 0;
  const double a = std::min(u0, u1);
  const double b = std::max(u0, u1);
  int k_first = std::max(0, static_cast<int>(std::floor((a - lo) / side)));
  const int k_last = std::min(count, static_cast<int>(std::ceil((b - lo) / side)));
  int n = 0;
  for (int k = k_first; k <= k_last; ++k) {
    const double c = lo + k * side;
    if (!(c > a && c < b)) continue;
    const double v = v0 + (v1 - v0) * (c - u0) / (u1 - u0);
    if (v > v_lo && v < v_hi) ++n;
  }
  return n;
}

}  // namespace

bool grid_index(const Building& b, Point p, int& col, int& row) {
  const double u = (p.x - b.bounds.min.x) / b.apartment_side_m;
  const double v = (p.y - b.bounds.min.y) / b.apartment_side_m;
  if (!(u > 0.0 && v > 0.0 && u < b.cols && v < b.rows)) return false;
  const double fu = std::floor(u);
  const double fv = std::floor(v);
  if (fu == u || fv == v) return false;
  col = static_cast<int>(fu);
  row = static_cast<int>(fv);
  return true;
}

int wall_count(const Building& b, Point from, Point to) {
  int c0, r0, c1, r1;
  if (grid_index(b, from, c0, r0) && grid_index(b, to, c1, r1)) {
    return std::abs(c1 - c0) + std::abs(r1 - r0);
  }
  const double side = b.apartment_side_m;
  return axis_crossings(from.x, from.y, to.x, to.y, b.bounds.min.x, side, b.cols, b.bounds.min.y,
                        b.bounds.max.y) +
         axis_crossings(from.y, from.x, to.y, to.x, b.bounds.min.y, side, b.rows, b.bounds.min.x,
                        b.bounds.max.x);
}

int wall_count(const Scenario& scenario, Point from, Point to) {
  return wall_count(scenario.building, from, to);
}

}  // namespace femtoho

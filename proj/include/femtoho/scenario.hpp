#pragma once

#include <cstdint>
#include <vector>

#include "femtoho/config.hpp"
#include "femtoho/geometry.hpp"

namespace femtoho {

using CellId = std::int32_t;
using UeId = std::int32_t;

inline constexpr CellId kNoCell = -1;
inline constexpr CellId kMacroCellId = 0;

enum class CellKind { Macro, Femto };
enum class Access { Open, ClosedCsg };
enum class Traffic { RealTimeVoip, RealTimeVideo, NonRealTime };
enum class UeRole { Fue, Mue };

inline bool is_real_time(Traffic t) { return t != Traffic::NonRealTime; }

struct Cell {
  CellId id = kNoCell;
  CellKind kind = CellKind::Macro;
  Point position;
  double tx_power_dbm = 0.0;
  Access access = Access::Open;
  std::vector<UeId> csg_members;  // sorted; empty for open cells
  int capacity_ues = 0;
  int apartment = -1;  // row-major apartment index, -1 for the macro
};

struct Ue {
  UeId id = -1;
  UeRole role = UeRole::Mue;
  Point position;
  double speed_kmh = 0.0;
  double heading_rad = 0.0;
  Traffic traffic = Traffic::RealTimeVoip;
  std::vector<CellId> whitelist;  // sorted femto ids
  double required_rate_bps = 0.0;
  CellId home_fap = kNoCell;

  bool allows(const Cell& cell) const;
};

struct Building {
  Box bounds;
  int rows = 0;
  int cols = 0;
  double apartment_side_m = 0.0;
  std::vector<Segment> walls;  // full-length grid lines, exterior included

  Box apartment(int row, int col) const;
  /// Row-major apartment index containing p, or -1 when outside.
  int apartment_at(Point p) const;
  bool contains(Point p) const { return bounds.contains(p); }
};

/// Immutable two-tier layout: one macro cell at the origin and a grid
/// building of femtocell apartments along +x.
struct Scenario {
  SimConfig config;
  Building building;
  Box bbox;
  std::vector<Cell> cells;  // cells[id]; cells[0] is the macro
  std::vector<Ue> ues;      // ues[id]; FUEs first, then MUEs

  const Cell& macro() const { return cells.front(); }
  std::size_t femto_count() const { return cells.size() - 1; }
};

/// Throws ConfigError when the config is invalid.
Scenario build_scenario(const SimConfig& config);

/// Column and row of a point strictly inside the building and off every grid
/// line. Two such points are separated by |dcol| + |drow| walls.
bool grid_index(const Building& b, Point p, int& col, int& row);

/// Walls crossed by the straight segment from -> to.
int wall_count(const Scenario& scenario, Point from, Point to);
int wall_count(const Building& building, Point from, Point to);

}  // namespace femtoho

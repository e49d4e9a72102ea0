#include "femtoho/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace femtoho {

PropagationParams PropagationParams::from(const SimConfig& c) {
  PropagationParams p;
  p.macro_intercept_db = c.macro_pl_intercept_db;
  p.macro_slope_db = c.macro_pl_slope_db;
  p.macro_min_distance_m = c.macro_min_distance_m;
  p.femto_intercept_db = c.femto_pl_intercept_db;
  p.femto_slope_db = c.femto_pl_slope_db;
  p.femto_min_distance_m = c.femto_min_distance_m;
  p.wall_loss_db = c.wall_loss_db;
  p.o2i_penetration_db = c.o2i_penetration_db;
  p.shadowing_macro_sigma_db = c.shadowing_macro_sigma_db;
  p.shadowing_femto_sigma_db = c.shadowing_femto_sigma_db;
  p.noise_floor_dbm = propagation::noise_floor_dbm(c.bandwidth_hz, c.noise_figure_db);
  return p;
}

namespace propagation {

double path_loss_macro(double distance_m, const PropagationParams& p) {
  const double d = std::max(distance_m, p.macro_min_distance_m);
  return p.macro_intercept_db + p.macro_slope_db * std::log10(d / 1000.0);
}

double path_loss_femto(double distance_m, int walls, const PropagationParams& p) {
  const double d = std::max(distance_m, p.femto_min_distance_m);
  return p.femto_intercept_db + p.femto_slope_db * std::log10(d) + walls * p.wall_loss_db;
}

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db) {
  return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

// slope * log10(d) == kHalfLog10E * slope * ln(d^2)
constexpr double kHalfLog10E = 0.5 * std::numbers::log10e;

double macro_path_loss_sq(double d2, bool indoor, const PropagationParams& p) {
  const double min2 = p.macro_min_distance_m * p.macro_min_distance_m;
  return p.macro_intercept_db + kHalfLog10E * p.macro_slope_db * std::log(std::max(d2, min2) * 1e-6) +
         (indoor ? p.o2i_penetration_db : 0.0);
}

double femto_path_loss_sq(double d2, int walls, const PropagationParams& p) {
  const double min2 = p.femto_min_distance_m * p.femto_min_distance_m;
  return p.femto_intercept_db + kHalfLog10E * p.femto_slope_db * std::log(std::max(d2, min2)) +
         walls * p.wall_loss_db;
}

double link_path_loss_db(const Scenario& scenario, const Cell& cell, Point ue_position,
                         const PropagationParams& p) {
  const double d2 = distance_squared(cell.position, ue_position);
  if (cell.kind == CellKind::Macro) {
    return macro_path_loss_sq(d2, scenario.building.contains(ue_position), p);
  }
  return femto_path_loss_sq(d2, wall_count(scenario, cell.position, ue_position), p);
}

double sinr_db(std::span<const double> rsrp_dbm, std::size_t serving, double noise_floor) {
  double interference_mw = dbm_to_mw(noise_floor);
  for (std::size_t i = 0; i < rsrp_dbm.size(); ++i) {
    if (i != serving) interference_mw += dbm_to_mw(rsrp_dbm[i]);
  }
  return rsrp_dbm[serving] - mw_to_dbm(interference_mw);
}

double shadowing_db(CellKind kind, const PropagationParams& p, RandomStream& stream) {
  const double sigma =
      kind == CellKind::Macro ? p.shadowing_macro_sigma_db : p.shadowing_femto_sigma_db;
  // Consumes a draw even when sigma is 0.
  return sigma * stream.normal();
}

double rsrp_dbm(const Scenario& scenario, const Cell& cell, Point ue_position,
                double shadowing, const PropagationParams& p) {
  return cell.tx_power_dbm - link_path_loss_db(scenario, cell, ue_position, p) - shadowing;
}

void measure_links(const Scenario& scenario, Point position, std::span<const double> shadowing,
                   const PropagationParams& p, std::span<LinkSample> out) {
  double total_mw = dbm_to_mw(p.noise_floor_dbm);
  for (std::size_t c = 0; c < scenario.cells.size(); ++c) {
    const Cell& cell = scenario.cells[c];
    LinkSample& s = out[c];
    s.cell_id = cell.id;
    s.path_loss_db = link_path_loss_db(scenario, cell, position, p);
    s.rsrp_dbm = cell.tx_power_dbm - s.path_loss_db - shadowing[c];
    total_mw += dbm_to_mw(s.rsrp_dbm);
  }
  for (std::size_t c = 0; c < scenario.cells.size(); ++c) {
    const double own_mw = dbm_to_mw(out[c].rsrp_dbm);
    out[c].sinr_db = out[c].rsrp_dbm - mw_to_dbm(total_mw - own_mw);
  }
}

}  // namespace propagation

ShadowingTable::ShadowingTable(const Scenario& scenario, const PropagationParams& p)
    : cells_(scenario.cells.size()), values_(scenario.ues.size() * scenario.cells.size()) {
  for (const Ue& ue : scenario.ues) {
    RandomStream stream(scenario.config.seed, StreamPurpose::Shadowing,
                        static_cast<std::uint64_t>(ue.id));
    for (const Cell& cell : scenario.cells) {
      values_[static_cast<std::size_t>(ue.id) * cells_ + static_cast<std::size_t>(cell.id)] =
          propagation::shadowing_db(cell.kind, p, stream);
    }
  }
}

}  // namespace femtoho

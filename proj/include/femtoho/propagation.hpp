#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "femtoho/rng.hpp"
#include "femtoho/scenario.hpp"

namespace femtoho {

/// Link-budget constants. Defaults: 3GPP macro (128.1 + 37.6 log10 d_km)
/// and indoor femto (38.46 + 20 log10 d_m + wall loss) models.
struct PropagationParams {
  double macro_intercept_db = 128.1;
  double macro_slope_db = 37.6;
  double macro_min_distance_m = 10.0;
  double femto_intercept_db = 38.46;
  double femto_slope_db = 20.0;
  double femto_min_distance_m = 0.1;
  double wall_loss_db = 10.0;
  double o2i_penetration_db = 20.0;
  double shadowing_macro_sigma_db = 8.0;
  double shadowing_femto_sigma_db = 4.0;
  double noise_floor_dbm = -91.98970004336019;  // 20 MHz, NF 9 dB

  static PropagationParams from(const SimConfig& config);
};

struct LinkSample {
  CellId cell_id = kNoCell;
  double path_loss_db = 0.0;
  double rsrp_dbm = 0.0;
  double sinr_db = 0.0;
};

inline double dbm_to_mw(double dbm) { return std::exp(dbm * 0.23025850929940458); }  // ln(10) / 10
inline double mw_to_dbm(double mw) { return 4.3429448190325175 * std::log(mw); }  // 10 / ln(10)

namespace propagation {

double path_loss_macro(double distance_m, const PropagationParams& p = {});
double path_loss_femto(double distance_m, int walls, const PropagationParams& p = {});
double noise_floor_dbm(double bandwidth_hz, double noise_figure_db);

/// Same models taking squared distance.
double macro_path_loss_sq(double d2, bool indoor, const PropagationParams& p);
double femto_path_loss_sq(double d2, int walls, const PropagationParams& p);

/// Path loss of the cell -> position link including wall and outdoor-to-indoor
/// penetration terms.
double link_path_loss_db(const Scenario& scenario, const Cell& cell, Point ue_position,
                         const PropagationParams& p);

/// SINR of `serving` against every other entry of `rsrp_dbm` (all co-channel)
/// plus thermal noise.
double sinr_db(std::span<const double> rsrp_dbm, std::size_t serving, double noise_floor_dbm);

}  // namespace propagation

/// Static log-normal shadowing, one draw per (UE, cell) link, fixed for the run.
class ShadowingTable {
 public:
  ShadowingTable() = default;
  ShadowingTable(const Scenario& scenario, const PropagationParams& p);

  double at(UeId ue, CellId cell) const {
    return values_[static_cast<std::size_t>(ue) * cells_ + static_cast<std::size_t>(cell)];
  }
  std::span<const double> row(UeId ue) const {
    return {values_.data() + static_cast<std::size_t>(ue) * cells_, cells_};
  }

 private:
  std::size_t cells_ = 0;
  std::vector<double> values_;
};

namespace propagation {

/// Per-link draw: zero-mean Gaussian with the kind's sigma taken
/// from the UE's shadowing stream.
double shadowing_db(CellKind kind, const PropagationParams& p, RandomStream& stream);

/// RSRP = Tx - path loss - shadowing.
double rsrp_dbm(const Scenario& scenario, const Cell& cell, Point ue_position,
                double shadowing_db, const PropagationParams& p);

/// Fills `out` (one entry per cell) with noise-free link samples for a UE at
/// `position`. SINR is computed per cell as if that cell were serving.
void measure_links(const Scenario& scenario, Point position, std::span<const double> shadowing,
                   const PropagationParams& p, std::span<LinkSample> out);

}  // namespace propagation

}  // namespace femtoho

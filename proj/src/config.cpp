#include "femtoho/config.hpp"

#include <cmath>

namespace femtoho {

std::string_view to_token(Algorithm a) {
  switch (a) {
    case Algorithm::Rss: return "rss";
    case Algorithm::RssPathLoss: return "rss-pathloss";
    case Algorithm::Speed: return "speed";
    case Algorithm::Proposed: return "proposed";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view token) {
  for (Algorithm a : kAllAlgorithms) {
    if (to_token(a) == token) return a;
  }
  return std::nullopt;
}

std::string_view to_token(AdmissionMode m) {
  return m == AdmissionMode::HeadCount ? "headcount" : "rate";
}

std::optional<AdmissionMode> parse_admission(std::string_view token) {
  if (token == "headcount") return AdmissionMode::HeadCount;
  if (token == "rate") return AdmissionMode::Rate;
  return std::nullopt;
}

std::int64_t SimConfig::tick_count() const {
  if (!(tick_s > 0.0) || !(sim_duration_s > 0.0)) return 0;
  // Guard against 60.0 / 0.1 landing a hair above 600.
  return static_cast<std::int64_t>(std::ceil(sim_duration_s / tick_s - 1e-9));
}

namespace {

class Checker {
 public:
  void finite(const char* field, double v) {
    if (!std::isfinite(v)) add(field, "must be finite");
  }
  void positive(const char* field, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) add(field, "must be > 0");
  }
  void non_negative(const char* field, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) add(field, "must be ≥ 0");
  }
  void at_least(const char* field, long long v, long long min) {
    if (v < min) add(field, "must be ≥ " + std::to_string(min));
  }
  void unit_interval(const char* field, double v, bool open_top) {
    const bool ok = open_top ? (v >= 0.0 && v < 1.0) : (v >= 0.0 && v <= 1.0);
    if (!ok) add(field, open_top ? "must be in [0, 1)" : "must be in [0, 1]");
  }
  void add(const char* field, const std::string& rule) {
    out.push_back(std::string(field) + " " + rule);
  }

  std::vector<std::string> out;
};

}  // namespace

std::vector<std::string> validate_config(const SimConfig& c) {
  Checker ck;
  ck.positive("bandwidth_hz", c.bandwidth_hz);
  ck.finite("macro_tx_dbm", c.macro_tx_dbm);
  ck.finite("fap_tx_dbm", c.fap_tx_dbm);
  ck.positive("apartment_side_m", c.apartment_side_m);
  ck.at_least("grid_rows", c.grid_rows, 1);
  ck.at_least("grid_cols", c.grid_cols, 1);
  ck.at_least("faps_per_apartment", c.faps_per_apartment, 1);
  ck.at_least("csg_users_per_fap", c.csg_users_per_fap, 0);
  ck.at_least("mue_count", c.mue_count, 0);
  ck.non_negative("mue_annulus_m", c.mue_annulus_m);
  if (c.mue_count > 0 && !(c.mue_annulus_m > 0.0)) {
    ck.add("mue_annulus_m", "must be > 0 when mue_count > 0");
  }
  if (c.mue_speeds_kmh.empty()) ck.add("mue_speeds_kmh", "must list at least one speed");
  for (double s : c.mue_speeds_kmh) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      ck.add("mue_speeds_kmh", "entries must be ≥ 0");
      break;
    }
  }
  ck.non_negative("fue_speed_kmh", c.fue_speed_kmh);
  ck.unit_interval("nonrealtime_fraction", c.nonrealtime_fraction, false);
  ck.positive("voip_rate_bps", c.voip_rate_bps);
  ck.positive("video_rate_bps", c.video_rate_bps);
  ck.positive("nonrealtime_rate_bps", c.nonrealtime_rate_bps);
  ck.at_least("fap_capacity_ues", c.fap_capacity_ues, 0);
  ck.at_least("macro_capacity_ues", c.macro_capacity_ues, 1);

  ck.positive("tick_s", c.tick_s);
  ck.non_negative("sim_duration_s", c.sim_duration_s);
  ck.non_negative("enb_fap_distance_m", c.enb_fap_distance_m);

  ck.finite("macro_pl_intercept_db", c.macro_pl_intercept_db);
  ck.finite("macro_pl_slope_db", c.macro_pl_slope_db);
  ck.positive("macro_min_distance_m", c.macro_min_distance_m);
  ck.finite("femto_pl_intercept_db", c.femto_pl_intercept_db);
  ck.finite("femto_pl_slope_db", c.femto_pl_slope_db);
  ck.positive("femto_min_distance_m", c.femto_min_distance_m);
  ck.non_negative("wall_loss_db", c.wall_loss_db);
  ck.non_negative("o2i_penetration_db", c.o2i_penetration_db);
  ck.non_negative("shadowing_macro_sigma_db", c.shadowing_macro_sigma_db);
  ck.non_negative("shadowing_femto_sigma_db", c.shadowing_femto_sigma_db);
  ck.finite("noise_figure_db", c.noise_figure_db);
  ck.non_negative("meas_noise_sigma_db", c.meas_noise_sigma_db);

  ck.positive("epoch_s", c.epoch_s);
  ck.non_negative("bbox_margin_m", c.bbox_margin_m);
  if (c.mue_count > 0 && c.bbox_margin_m < c.mue_annulus_m) {
    ck.add("bbox_margin_m", "must be ≥ mue_annulus_m so MUEs start inside the bounding box");
  }

  ck.unit_interval("beta", c.beta, true);
  ck.unit_interval("alpha", c.alpha, false);

  ck.non_negative("hmm_db", c.hmm_db);
  ck.finite("s_f_th_dbm", c.s_f_th_dbm);
  ck.finite("rsrp_th_f_dbm", c.rsrp_th_f_dbm);
  ck.non_negative("speed_low_kmh", c.speed_low_kmh);
  ck.non_negative("speed_high_kmh", c.speed_high_kmh);
  if (c.speed_low_kmh > c.speed_high_kmh) ck.add("speed_low_kmh", "must be ≤ speed_high_kmh");
  ck.non_negative("ttt_reactive_s", c.ttt_reactive_s);
  ck.non_negative("proactive_margin_reduction_db", c.proactive_margin_reduction_db);
  ck.finite("sinr_min_db", c.sinr_min_db);
  ck.non_negative("exec_delay_s", c.exec_delay_s);
  ck.positive("pingpong_window_s", c.pingpong_window_s);
  ck.finite("ho_failure_threshold_dbm", c.ho_failure_threshold_dbm);
  return std::move(ck.out);
}

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::string s = "invalid configuration:";
  for (const auto& line : v) s += "\n  " + line;
  return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

void require_valid(const SimConfig& config) {
  auto v = validate_config(config);
  if (!v.empty()) throw ConfigError(std::move(v));
}

}  // namespace femtoho

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace femtoho {

enum class Algorithm { Rss, RssPathLoss, Speed, Proposed };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Rss, Algorithm::RssPathLoss,
                                               Algorithm::Speed, Algorithm::Proposed};

std::string_view to_token(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view token);

/// Bandwidth-satisfaction rule used by the proposed algorithm.
enum class AdmissionMode { HeadCount, Rate };

std::string_view to_token(AdmissionMode m);
std::optional<AdmissionMode> parse_admission(std::string_view token);

/// Every tunable of a simulation run. Field names double as config-file keys.
struct SimConfig {
  // Layout and population (defaults follow the two-tier apartment scenario).
  double bandwidth_hz = 20e6;
  double macro_tx_dbm = 43.0;
  double fap_tx_dbm = 20.0;
  double apartment_side_m = 10.0;
  int grid_rows = 5;
  int grid_cols = 5;
  int faps_per_apartment = 1;
  int csg_users_per_fap = 9;
  int mue_count = 30;
  double mue_annulus_m = 50.0;
  bool mue_csg_member = true;
  std::vector<double> mue_speeds_kmh = {3.0, 7.0, 120.0};
  double fue_speed_kmh = 3.0;
  double nonrealtime_fraction = 0.0;
  double voip_rate_bps = 64e3;
  double video_rate_bps = 1e6;
  double nonrealtime_rate_bps = 256e3;
  int fap_capacity_ues = 0;  // 0: same as csg_users_per_fap
  int macro_capacity_ues = 10000;

  double tick_s = 0.1;
  double sim_duration_s = 60.0;
  double enb_fap_distance_m = 100.0;
  std::uint64_t seed = 1;
  Algorithm algorithm = Algorithm::Proposed;

  // Propagation.
  double macro_pl_intercept_db = 128.1;
  double macro_pl_slope_db = 37.6;
  double macro_min_distance_m = 10.0;
  double femto_pl_intercept_db = 38.46;
  double femto_pl_slope_db = 20.0;
  double femto_min_distance_m = 0.1;
  double wall_loss_db = 10.0;
  double o2i_penetration_db = 20.0;
  double shadowing_macro_sigma_db = 8.0;
  double shadowing_femto_sigma_db = 4.0;
  double noise_figure_db = 9.0;
  double meas_noise_sigma_db = 1.0;

  // Mobility.
  double epoch_s = 5.0;
  bool confine_fues = true;
  double bbox_margin_m = 50.0;

  // Filtering.
  double beta = 0.9;
  double alpha = 0.0;

  // Handover decision and execution.
  double hmm_db = 2.0;
  double s_f_th_dbm = -72.0;
  double rsrp_th_f_dbm = -72.0;
  double speed_high_kmh = 10.0;
  double speed_low_kmh = 5.0;
  double ttt_reactive_s = 0.4;
  double proactive_margin_reduction_db = 2.0;
  double sinr_min_db = -4.0;
  double exec_delay_s = 0.2;
  double pingpong_window_s = 1.0;
  double ho_failure_threshold_dbm = -110.0;
  AdmissionMode admission = AdmissionMode::HeadCount;

  // Metrics.
  bool include_fues_in_metrics = false;

  int effective_fap_capacity() const {
    return fap_capacity_ues > 0 ? fap_capacity_ues : csg_users_per_fap;
  }
  std::int64_t tick_count() const;
};

/// One message per violated rule, naming the field. Empty means valid.
std::vector<std::string> validate_config(const SimConfig& config);

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
  explicit ConfigError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Raised when the model produces a value it cannot continue from.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ConfigError listing every violation.
void require_valid(const SimConfig& config);

}  // namespace femtoho

#pragma once

#include <array>
#include <limits>
#include <string_view>
#include <vector>

#include "femtoho/config.hpp"
#include "femtoho/mobility.hpp"
#include "femtoho/scenario.hpp"

namespace femtoho {

/// What a decision algorithm knows about one measured cell.
struct CandidateLink {
  CellId cell_id = kNoCell;
  CellKind kind = CellKind::Macro;
  double raw_rsrp_dbm = 0.0;
  double filtered_rsrp_dbm = 0.0;
  double path_loss_db = 0.0;
  bool in_whitelist = false;  // true for open cells
  int load_ues = 0;
  int capacity_ues = 0;
  double sinr_db = 0.0;       // SINR the UE would get if served by this cell
  double combined_dbm = 0.0;  // s_pro; meaningful for femto cells only
  bool heading_toward = false;
};

/// Full input vector of one handover decision. `candidates` lists every
/// measured cell, serving cell and macro included.
struct DecisionInput {
  UeId ue_id = -1;
  CellId serving_cell_id = kNoCell;
  CellKind serving_kind = CellKind::Macro;
  std::vector<CandidateLink> candidates;
  double speed_kmh = 0.0;
  SpeedClass speed_class = SpeedClass::Low;
  Traffic traffic = Traffic::RealTimeVoip;
  double required_rate_bps = 0.0;
  double sinr_serving_db = 0.0;
};

struct DecisionConfig {
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
  double bandwidth_hz = 20e6;

  static DecisionConfig from(const SimConfig& config);
};

enum class Reason {
  None,
  NoCandidate,
  SpeedReject,
  DirectionReject,
  AccessReject,
  BandwidthReject,
  RssFail,
  PathLossFail,
  SinrReject,
  Inbound,
  Outbound,
  InterFap,
  Initial,
  LinkFailure,
};

std::string_view to_token(Reason r);

enum class Verdict { Stay, HandoverTo };

struct Decision {
  Verdict verdict = Verdict::Stay;
  CellId target = kNoCell;
  Reason reason = Reason::None;
  double ttt_s = 0.0;  // time the verdict must persist before execution

  static Decision stay(Reason r) { return {Verdict::Stay, kNoCell, r, 0.0}; }
  static Decision to(CellId target, Reason r, double ttt) {
    return {Verdict::HandoverTo, target, r, ttt};
  }
  bool is_handover() const { return verdict == Verdict::HandoverTo; }
};

namespace handover {

/// Inbound when serving the macro (filtered femto vs. macro with the
/// compensated parameter s_pro), outbound when serving a femto.
Decision decide_rss(const DecisionInput& input, const DecisionConfig& cfg);

/// Inbound needs the femto above its RSRP floor, above the macro by the
/// margin, and a smaller path loss than the macro link.
Decision decide_rss_pathloss(const DecisionInput& input, const DecisionConfig& cfg);

/// High speed never enters a femto. Medium speed needs to be heading toward
/// it. Real-time traffic hands over proactively (reduced margin, no TTT),
/// other traffic reactively (full margin, TTT).
Decision decide_speed(const DecisionInput& input, const DecisionConfig& cfg);

/// Gate chain evaluated on the best whitelisted femto, in this order:
/// speed, access, bandwidth, signal (RSRP floor, s_pro margin, SINR floor),
/// then traffic mode. No direction prediction: velocity is known.
Decision decide_proposed(const DecisionInput& input, const DecisionConfig& cfg);

Decision decide(Algorithm algorithm, const DecisionInput& input, const DecisionConfig& cfg);

/// Hysteresis margin for the speed-aware algorithms given traffic type.
double mode_margin_db(Traffic traffic, const DecisionConfig& cfg);
double mode_ttt_s(Traffic traffic, const DecisionConfig& cfg);

}  // namespace handover

struct HandoverCounters {
  int ho_count = 0;
  int pingpong_count = 0;
  int ho_failures = 0;
};

/// Per-UE attachment state: pending trigger, execution in flight, and the
/// last handover for ping-pong detection.
struct HandoverState {
  CellId serving_cell_id = kNoCell;

  CellId pending_target = kNoCell;
  double pending_elapsed_s = 0.0;

  CellId exec_target = kNoCell;
  double exec_remaining_s = 0.0;
  Reason exec_reason = Reason::None;

  CellId previous_cell_id = kNoCell;
  double time_of_last_ho_s = -std::numeric_limits<double>::infinity();

  HandoverCounters counters;

  bool executing() const { return exec_target != kNoCell; }
};

enum class EventType { Attach, HoStart, HoComplete, HoFailure, PingPong };

std::string_view to_token(EventType t);

struct HandoverEvent {
  EventType type = EventType::Attach;
  CellId from = kNoCell;
  CellId to = kNoCell;
  Reason reason = Reason::None;
};

struct StepEvents {
  std::array<HandoverEvent, 3> items{};
  int size = 0;

  void push(const HandoverEvent& e) { items[static_cast<std::size_t>(size++)] = e; }
  const HandoverEvent* begin() const { return items.data(); }
  const HandoverEvent* end() const { return items.data() + size; }
};

struct ExecutionInput {
  double now_s = 0.0;
  double dt_s = 0.1;
  double serving_rsrp_dbm = 0.0;
  CellId strongest_allowed = kNoCell;  // re-attachment target on failure
};

namespace handover {

/// Advances the state by one tick. A handover verdict must persist for its
/// TTT before execution starts; execution lasts exec_delay_s and fails if the
/// serving RSRP drops under the failure threshold meanwhile. Decisions are
/// ignored while an execution is in flight.
StepEvents apply_ttt_and_execute(HandoverState& state, const Decision& decision,
                                 const ExecutionInput& in, const DecisionConfig& cfg);

}  // namespace handover
}  // namespace femtoho

#include "femtoho/handover.hpp"

#include <algorithm>
#include <cmath>

namespace femtoho {

DecisionConfig DecisionConfig::from(const SimConfig& c) {
  DecisionConfig d;
  d.hmm_db = c.hmm_db;
  d.s_f_th_dbm = c.s_f_th_dbm;
  d.rsrp_th_f_dbm = c.rsrp_th_f_dbm;
  d.speed_high_kmh = c.speed_high_kmh;
  d.speed_low_kmh = c.speed_low_kmh;
  d.ttt_reactive_s = c.ttt_reactive_s;
  d.proactive_margin_reduction_db = c.proactive_margin_reduction_db;
  d.sinr_min_db = c.sinr_min_db;
  d.exec_delay_s = c.exec_delay_s;
  d.pingpong_window_s = c.pingpong_window_s;
  d.ho_failure_threshold_dbm = c.ho_failure_threshold_dbm;
  d.admission = c.admission;
  d.bandwidth_hz = c.bandwidth_hz;
  return d;
}

std::string_view to_token(Reason r) {
  switch (r) {
    case Reason::None: return "none";
    case Reason::NoCandidate: return "no-candidate";
    case Reason::SpeedReject: return "speed-reject";
    case Reason::DirectionReject: return "direction-reject";
    case Reason::AccessReject: return "access-reject";
    case Reason::BandwidthReject: return "bandwidth-reject";
    case Reason::RssFail: return "rss-fail";
    case Reason::PathLossFail: return "pathloss-fail";
    case Reason::SinrReject: return "sinr-reject";
    case Reason::Inbound: return "inbound";
    case Reason::Outbound: return "outbound";
    case Reason::InterFap: return "inter-fap";
    case Reason::Initial: return "initial";
    case Reason::LinkFailure: return "link-failure";
  }
  return "unknown";
}

std::string_view to_token(EventType t) {
  switch (t) {
    case EventType::Attach: return "attach";
    case EventType::HoStart: return "ho_start";
    case EventType::HoComplete: return "ho_complete";
    case EventType::HoFailure: return "ho_failure";
    case EventType::PingPong: return "pingpong";
  }
  return "unknown";
}

namespace handover {

namespace {

const CandidateLink* find_macro(const DecisionInput& in) {
  for (const auto& c : in.candidates) {
    if (c.kind == CellKind::Macro) return &c;
  }
  return nullptr;
}

const CandidateLink* find_cell(const DecisionInput& in, CellId id) {
  for (const auto& c : in.candidates) {
    if (c.cell_id == id) return &c;
  }
  return nullptr;
}

// Strongest filtered femto, ties to the lower cell id.
const CandidateLink* best_femto(const DecisionInput& in, CellId exclude, bool whitelisted_only) {
  const CandidateLink* best = nullptr;
  for (const auto& c : in.candidates) {
    if (c.kind != CellKind::Femto || c.cell_id == exclude) continue;
    if (whitelisted_only && !c.in_whitelist) continue;
    if (!best || c.filtered_rsrp_dbm > best->filtered_rsrp_dbm ||
        (c.filtered_rsrp_dbm == best->filtered_rsrp_dbm && c.cell_id < best->cell_id)) {
      best = &c;
    }
  }
  return best;
}

// Inbound trigger: above the femto threshold the compensated parameter must
// beat the macro by the margin, below it the plain femto RSRP must.
bool inbound_trigger(const CandidateLink& femto, double macro_dbm, double th_dbm,
                     double margin_db) {
  const double f = femto.filtered_rsrp_dbm;
  return (f > th_dbm && femto.combined_dbm > macro_dbm + margin_db) ||
         (f < th_dbm && f > macro_dbm + margin_db);
}

bool outbound_trigger(const CandidateLink& femto, double macro_dbm, double th_dbm,
                      double margin_db) {
  const double f = femto.filtered_rsrp_dbm;
  return (f < th_dbm && f + margin_db < macro_dbm) ||
         (f > th_dbm && femto.combined_dbm < macro_dbm + margin_db);
}

bool admits(const CandidateLink& cell, const DecisionInput& in, const DecisionConfig& cfg) {
  if (cfg.admission == AdmissionMode::HeadCount) return cell.load_ues < cell.capacity_ues;
  const double capacity_bps = cfg.bandwidth_hz * std::log2(1.0 + std::pow(10.0, cell.sinr_db / 10.0));
  return capacity_bps / (cell.load_ues + 1) >= in.required_rate_bps;
}

struct Anchors {
  const CandidateLink* macro;
  const CandidateLink* serving;
};

Anchors anchors(const DecisionInput& in) {
  return {find_macro(in), find_cell(in, in.serving_cell_id)};
}

}  // namespace

double mode_margin_db(Traffic traffic, const DecisionConfig& cfg) {
  if (!is_real_time(traffic)) return cfg.hmm_db;
  return std::max(0.0, cfg.hmm_db - cfg.proactive_margin_reduction_db);
}

double mode_ttt_s(Traffic traffic, const DecisionConfig& cfg) {
  return is_real_time(traffic) ? 0.0 : cfg.ttt_reactive_s;
}

Decision decide_rss(const DecisionInput& in, const DecisionConfig& cfg) {
  const auto [macro, serving] = anchors(in);
  if (!macro || !serving) return Decision::stay(Reason::NoCandidate);
  const double m = macro->filtered_rsrp_dbm;

  if (in.serving_kind == CellKind::Macro) {
    const CandidateLink* femto = best_femto(in, kNoCell, true);
    if (!femto) return Decision::stay(Reason::NoCandidate);
    if (inbound_trigger(*femto, m, cfg.s_f_th_dbm, cfg.hmm_db)) {
      return Decision::to(femto->cell_id, Reason::Inbound, cfg.ttt_reactive_s);
    }
    return Decision::stay(Reason::RssFail);
  }

  if (outbound_trigger(*serving, m, cfg.s_f_th_dbm, cfg.hmm_db)) {
    return Decision::to(macro->cell_id, Reason::Outbound, cfg.ttt_reactive_s);
  }
  const CandidateLink* other = best_femto(in, serving->cell_id, true);
  if (other && other->filtered_rsrp_dbm > serving->filtered_rsrp_dbm + cfg.hmm_db) {
    return Decision::to(other->cell_id, Reason::InterFap, cfg.ttt_reactive_s);
  }
  return Decision::stay(Reason::RssFail);
}

Decision decide_rss_pathloss(const DecisionInput& in, const DecisionConfig& cfg) {
  const auto [macro, serving] = anchors(in);
  if (!macro || !serving) return Decision::stay(Reason::NoCandidate);

  // (a) femto over its floor, (b) over the reference by the margin,
  // (c) smaller path loss than the reference link.
  auto enters = [&](const CandidateLink& femto, const CandidateLink& reference) -> Reason {
    const bool a = femto.filtered_rsrp_dbm > cfg.rsrp_th_f_dbm;
    const bool b = femto.filtered_rsrp_dbm > reference.filtered_rsrp_dbm + cfg.hmm_db;
    if (!(a && b)) return Reason::RssFail;
    if (!(femto.path_loss_db < reference.path_loss_db)) return Reason::PathLossFail;
    return Reason::None;
  };

  if (in.serving_kind == CellKind::Macro) {
    const CandidateLink* femto = best_femto(in, kNoCell, true);
    if (!femto) return Decision::stay(Reason::NoCandidate);
    const Reason r = enters(*femto, *macro);
    if (r != Reason::None) return Decision::stay(r);
    return Decision::to(femto->cell_id, Reason::Inbound, cfg.ttt_reactive_s);
  }

  if (macro->filtered_rsrp_dbm > serving->filtered_rsrp_dbm + cfg.hmm_db &&
      macro->path_loss_db < serving->path_loss_db) {
    return Decision::to(macro->cell_id, Reason::Outbound, cfg.ttt_reactive_s);
  }
  const CandidateLink* other = best_femto(in, serving->cell_id, true);
  if (!other) return Decision::stay(Reason::RssFail);
  const Reason r = enters(*other, *serving);
  if (r != Reason::None) return Decision::stay(r);
  return Decision::to(other->cell_id, Reason::InterFap, cfg.ttt_reactive_s);
}

Decision decide_speed(const DecisionInput& in, const DecisionConfig& cfg) {
  const auto [macro, serving] = anchors(in);
  if (!macro || !serving) return Decision::stay(Reason::NoCandidate);
  const double m = macro->filtered_rsrp_dbm;
  const double margin = mode_margin_db(in.traffic, cfg);
  const double ttt = mode_ttt_s(in.traffic, cfg);

  // Speed screening applies to any move into a femto.
  auto screen = [&](const CandidateLink& femto) -> Reason {
    if (in.speed_class == SpeedClass::High) return Reason::SpeedReject;
    if (in.speed_class == SpeedClass::Medium && !femto.heading_toward) {
      return Reason::DirectionReject;
    }
    return Reason::None;
  };

  if (in.serving_kind == CellKind::Macro) {
    if (in.speed_class == SpeedClass::High) return Decision::stay(Reason::SpeedReject);
    const CandidateLink* femto = best_femto(in, kNoCell, true);
    if (!femto) return Decision::stay(Reason::NoCandidate);
    if (const Reason r = screen(*femto); r != Reason::None) return Decision::stay(r);
    if (inbound_trigger(*femto, m, cfg.s_f_th_dbm, margin)) {
      return Decision::to(femto->cell_id, Reason::Inbound, ttt);
    }
    return Decision::stay(Reason::RssFail);
  }

  if (outbound_trigger(*serving, m, cfg.s_f_th_dbm, margin)) {
    return Decision::to(macro->cell_id, Reason::Outbound, ttt);
  }
  const CandidateLink* other = best_femto(in, serving->cell_id, true);
  if (!other) return Decision::stay(Reason::RssFail);
  if (const Reason r = screen(*other); r != Reason::None) return Decision::stay(r);
  if (other->filtered_rsrp_dbm > serving->filtered_rsrp_dbm + margin) {
    return Decision::to(other->cell_id, Reason::InterFap, ttt);
  }
  return Decision::stay(Reason::RssFail);
}

Decision decide_proposed(const DecisionInput& in, const DecisionConfig& cfg) {
  const auto [macro, serving] = anchors(in);
  if (!macro || !serving) return Decision::stay(Reason::NoCandidate);
  const double margin = mode_margin_db(in.traffic, cfg);
  const double ttt = mode_ttt_s(in.traffic, cfg);
  const bool from_macro = in.serving_kind == CellKind::Macro;

  if (!from_macro && outbound_trigger(*serving, macro->filtered_rsrp_dbm, cfg.s_f_th_dbm, margin)) {
    return Decision::to(macro->cell_id, Reason::Outbound, ttt);
  }

  // 1. speed
  if (in.speed_class == SpeedClass::High) return Decision::stay(Reason::SpeedReject);

  // 2. access
  const CellId exclude = from_macro ? kNoCell : serving->cell_id;
  const CandidateLink* femto = best_femto(in, exclude, true);
  if (!femto) {
    const bool any = best_femto(in, exclude, false) != nullptr;
    return Decision::stay(any ? Reason::AccessReject : Reason::NoCandidate);
  }

  // 3. bandwidth
  if (!admits(*femto, in, cfg)) return Decision::stay(Reason::BandwidthReject);

  // 4. signal
  const bool rss_ok =
      femto->filtered_rsrp_dbm > cfg.s_f_th_dbm &&
      (from_macro ? femto->combined_dbm > macro->filtered_rsrp_dbm + margin
                  : femto->filtered_rsrp_dbm > serving->filtered_rsrp_dbm + margin);
  if (!rss_ok) return Decision::stay(Reason::RssFail);
  if (!(femto->sinr_db >= cfg.sinr_min_db)) return Decision::stay(Reason::SinrReject);

  // 5. traffic mode sets margin (above) and TTT
  return Decision::to(femto->cell_id, from_macro ? Reason::Inbound : Reason::InterFap, ttt);
}

Decision decide(Algorithm algorithm, const DecisionInput& input, const DecisionConfig& cfg) {
  switch (algorithm) {
    case Algorithm::Rss: return decide_rss(input, cfg);
    case Algorithm::RssPathLoss: return decide_rss_pathloss(input, cfg);
    case Algorithm::Speed: return decide_speed(input, cfg);
    case Algorithm::Proposed: return decide_proposed(input, cfg);
  }
  return Decision::stay(Reason::None);
}

namespace {

constexpr double kTimeEps = 1e-9;

void complete(HandoverState& s, double now, const DecisionConfig& cfg, StepEvents& out) {
  const CellId from = s.serving_cell_id;
  const CellId to = s.exec_target;
  out.push({EventType::HoComplete, from, to, s.exec_reason});
  ++s.counters.ho_count;
  if (to == s.previous_cell_id && now - s.time_of_last_ho_s <= cfg.pingpong_window_s + kTimeEps) {
    ++s.counters.pingpong_count;
    out.push({EventType::PingPong, from, to, s.exec_reason});
  }
  s.previous_cell_id = from;
  s.time_of_last_ho_s = now;
  s.serving_cell_id = to;
  s.exec_target = kNoCell;
  s.exec_remaining_s = 0.0;
  s.exec_reason = Reason::None;
}

}  // namespace

StepEvents apply_ttt_and_execute(HandoverState& s, const Decision& decision,
                                 const ExecutionInput& in, const DecisionConfig& cfg) {
  StepEvents out;
  if (s.executing()) {
    s.exec_remaining_s -= in.dt_s;
    if (in.serving_rsrp_dbm < cfg.ho_failure_threshold_dbm) {
      ++s.counters.ho_failures;
      out.push({EventType::HoFailure, s.serving_cell_id, in.strongest_allowed, Reason::LinkFailure});
      s.serving_cell_id = in.strongest_allowed;
      s.exec_target = kNoCell;
      s.exec_remaining_s = 0.0;
      s.exec_reason = Reason::None;
      s.previous_cell_id = kNoCell;
      return out;
    }
    if (s.exec_remaining_s <= kTimeEps) complete(s, in.now_s, cfg, out);
    return out;
  }

  if (!decision.is_handover() || decision.target == s.serving_cell_id) {
    s.pending_target = kNoCell;
    s.pending_elapsed_s = 0.0;
    return out;
  }

  if (decision.target == s.pending_target) {
    s.pending_elapsed_s += in.dt_s;
  } else {
    s.pending_target = decision.target;
    s.pending_elapsed_s = 0.0;
  }
  if (s.pending_elapsed_s + kTimeEps < decision.ttt_s) return out;

  s.exec_target = decision.target;
  s.exec_reason = decision.reason;
  s.exec_remaining_s = cfg.exec_delay_s;
  s.pending_target = kNoCell;
  s.pending_elapsed_s = 0.0;
  out.push({EventType::HoStart, s.serving_cell_id, s.exec_target, decision.reason});
  if (s.exec_remaining_s <= kTimeEps) complete(s, in.now_s, cfg, out);
  return out;
}

}  // namespace handover
}  // namespace femtoho

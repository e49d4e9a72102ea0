// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "decision_grid.hpp"
#include "decision_oracle.hpp"
#include "femtoho/cli.hpp"
#include "femtoho/engine.hpp"
#include "femtoho/filtering.hpp"
#include "femtoho/handover.hpp"
#include "femtoho/metrics.hpp"
#include "femtoho/propagation.hpp"
#include "femtoho/scenario.hpp"

using namespace femtoho;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", n, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void decision_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  long mismatches = 0;
  long handovers = 0;
  for (Algorithm a : kAllAlgorithms) {
    testing_grid::DecisionGrid grid(20240 + static_cast<int>(a));
    for (int i = 0; i < 10000; ++i) {
      const auto p = grid.next();
      const Decision got = handover::decide(a, p.input, p.config);
      const oracle::Expected want = oracle::evaluate(a, p.input, p.config);
      bool same = got.is_handover() == want.handover;
      if (same && want.handover) same = got.target == want.target && got.ttt_s == want.ttt_s;
      if (same && a == Algorithm::Proposed) same = got.reason == want.reason;
      mismatches += same ? 0 : 1;
      handovers += want.handover ? 1 : 0;
    }
  }
  const double s = seconds_since(t0);
  report(1, mismatches == 0 && s < 5.0, "decision kernels agree with brute-force evaluator",
         std::to_string(mismatches) + " mismatches in 40000 points, " + std::to_string(handovers) +
             " handover verdicts, " + fmt("%.2f s", s));
}

void filter_oracle() {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> n(-80.0, 8.0);
  std::vector<double> s(1200);
  for (double& x : s) x = n(rng);
  double worst = 0.0;
  bool dc_exact = true;
  for (double beta : {0.0, 0.5, 0.9, 0.99}) {
    FilterState st{beta, std::nullopt};
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double y = filtering::filter_step(st, s[k]);
      if (k < 200) continue;
      // Direct convolution with the truncated kernel plus the initial-sample tail.
      double acc = 0.0;
      for (std::size_t j = 0; j < k; ++j) acc += (1.0 - beta) * std::pow(beta, static_cast<double>(j)) * s[k - j];
      acc += std::pow(beta, static_cast<double>(k)) * s[0];
      worst = std::max(worst, std::abs(y - acc));
    }
    for (double c : {-91.7, -60.0, 12.345}) {
      FilterState dc{beta, std::nullopt};
      for (int k = 0; k < 2000; ++k) dc_exact &= filtering::filter_step(dc, c) == c;
    }
  }
  report(2, worst <= 1e-9 && dc_exact, "recursive filter equals windowed convolution",
         fmt("max error %.3g dB", worst) + (dc_exact ? ", DC gain exactly 1" : ", DC gain not exact"));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism() {
  const fs::path root = fs::temp_directory_path() / "femtoho_acceptance_det";
  fs::remove_all(root);
  std::vector<std::string> outputs;
  int bad_exit = 0;
  int k = 0;
  for (const char* threads : {"1", "1", "8", "8"}) {
    setenv("FEMTOHO_THREADS", threads, 1);
    const fs::path run_dir = root / ("run" + std::to_string(k));
    const fs::path cmp_dir = root / ("cmp" + std::to_string(k));
    ++k;
    bad_exit += cli::main({"femtoho", "run", "--seed", "4242", "--set", "sim_duration_s=30",
                           "--out", run_dir.string()}) != 0;
    bad_exit += cli::main({"femtoho", "compare", "--seed", "4242", "--set", "sim_duration_s=5",
                           "--distances", "50:200:50", "--replications", "4", "--out",
                           cmp_dir.string()}) != 0;
    outputs.push_back(slurp(run_dir / "events.csv") + slurp(run_dir / "metrics.csv") +
                      slurp(cmp_dir / "compare.csv"));
  }
  unsetenv("FEMTOHO_THREADS");
  fs::remove_all(root);
  bool same = bad_exit == 0 && !outputs[0].empty();
  for (const auto& o : outputs) same &= o == outputs[0];
  report(3, same, "byte-identical outputs across invocations and thread counts 1 and 8",
         std::to_string(outputs[0].size()) + " bytes compared, " + std::to_string(bad_exit) +
             " failed invocations");
}

CandidateLink link(CellId id, CellKind kind, double rsrp, double pl) {
  CandidateLink c;
  c.cell_id = id;
  c.kind = kind;
  c.raw_rsrp_dbm = c.filtered_rsrp_dbm = c.combined_dbm = rsrp;
  c.path_loss_db = pl;
  c.in_whitelist = true;
  c.capacity_ues = kind == CellKind::Macro ? 10000 : 9;
  c.heading_toward = true;
  return c;
}

// Two-cell trace: filtered macro and femto levels drive one UE through the
// decision kernel and the TTT/execution state machine.
HandoverCounters drive(Algorithm alg, double hmm, const std::vector<double>& macro,
                       const std::vector<double>& femto) {
  DecisionConfig cfg;
  cfg.hmm_db = hmm;
  HandoverState st;
  st.serving_cell_id = kMacroCellId;
  FilterState fm{0.9, std::nullopt};
  FilterState ff{0.9, std::nullopt};
  for (std::size_t k = 0; k < macro.size(); ++k) {
    const double m = filtering::filter_step(fm, macro[k]);
    const double f = filtering::filter_step(ff, femto[k]);
    DecisionInput in;
    in.ue_id = 1;
    in.serving_cell_id = st.serving_cell_id;
    in.serving_kind = st.serving_cell_id == kMacroCellId ? CellKind::Macro : CellKind::Femto;
    in.candidates = {link(kMacroCellId, CellKind::Macro, m, 43.0 - macro[k] + 30.0),
                     link(1, CellKind::Femto, f, 20.0 - femto[k])};
    in.candidates[0].sinr_db = m - f;
    in.candidates[1].sinr_db = f - m;
    in.speed_kmh = 3.0;
    in.speed_class = SpeedClass::Low;
    in.traffic = Traffic::NonRealTime;
    const Decision d = handover::decide(alg, in, cfg);
    const double serving_raw = st.serving_cell_id == kMacroCellId ? macro[k] : femto[k];
    handover::apply_ttt_and_execute(st, d, {static_cast<double>(k) * 0.1, 0.1, serving_raw, kMacroCellId},
                                    cfg);
  }
  return st.counters;
}

void hysteresis() {
  bool single_ok = true;
  std::string single_detail;
  for (Algorithm a : kAllAlgorithms) {
    for (double gap : {3.0, 6.0, 10.0}) {
      int prev = 1;
      for (double hmm = 0.0; hmm <= 12.0; hmm += 0.25) {
        std::vector<double> macro(1500, -70.0);
        std::vector<double> femto(1500);
        for (std::size_t k = 0; k < femto.size(); ++k) {
          femto[k] = -80.0 + (10.0 + gap) * (1.0 - std::exp(-static_cast<double>(k) / 60.0));
        }
        const int n = drive(a, hmm, macro, femto).ho_count;
        if (n < 0 || n > 1 || n > prev) {
          single_ok = false;
          single_detail = std::string(to_token(a)) + " gap " + fmt("%g", gap) + " hmm " + fmt("%g", hmm);
        }
        prev = n;
      }
    }
  }

  bool noisy_ok = true;
  std::string noisy_detail;
  for (Algorithm a : kAllAlgorithms) {
    double pp0 = 0.0;
    double pp5 = 0.0;
    for (int seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
      std::normal_distribution<double> noise(0.0, 4.0);
      std::vector<double> macro(600);
      std::vector<double> femto(600);
      for (std::size_t k = 0; k < macro.size(); ++k) {
        macro[k] = -70.0 + noise(rng);
        femto[k] = -70.0 + noise(rng);
      }
      pp0 += drive(a, 0.0, macro, femto).pingpong_count;
      pp5 += drive(a, 5.0, macro, femto).pingpong_count;
    }
    pp0 /= 100.0;
    pp5 /= 100.0;
    noisy_ok &= pp5 <= pp0;
    noisy_detail += std::string(noisy_detail.empty() ? "" : "; ") + std::string(to_token(a)) + " " +
                    fmt("%.2f", pp0) + " -> " + fmt("%.2f", pp5);
  }
  report(4, single_ok && noisy_ok, "single crossing gives 0 or 1 HO, margin suppresses ping-pong",
         (single_ok ? std::string("single-crossing OK") : "single-crossing broke at " + single_detail) +
             "; mean ping-pong at HMM 0 -> 5 dB: " + noisy_detail);
}

std::string row_values(const SweepTable& t, Algorithm a, Metric m, double max_d) {
  std::string out = std::string(to_token(a)) + " [";
  for (double d : t.distances()) {
    if (d > max_d) break;
    out += fmt(" %.3f", t.find(d, a)->at(m).mean);
  }
  return out + " ]";
}

void trends() {
  const ExperimentPreset p = resolve_preset(PresetName::Fig10, SimConfig{});
  const auto t0 = std::chrono::steady_clock::now();
  const SweepTable t = sweep(p.config, p.distances, p.replications, p.algorithms, engine::thread_count_from_env());
  const double s = seconds_since(t0);
  const auto mean = [&](double d, Algorithm a, Metric m) { return t.find(d, a)->at(m).mean; };

  int pts5 = 0;
  int ok5 = 0;
  for (double d : t.distances()) {
    if (d > 200.0) continue;
    ++pts5;
    const double pr = mean(d, Algorithm::Proposed, Metric::FapAssignmentProbability);
    ok5 += pr >= mean(d, Algorithm::RssPathLoss, Metric::FapAssignmentProbability) &&
           pr >= mean(d, Algorithm::Speed, Metric::FapAssignmentProbability);
  }
  const bool pass5 = pts5 > 0 && ok5 >= 0.8 * pts5 && s < 60.0;
  const Metric fap = Metric::FapAssignmentProbability;
  report(5, pass5, "proposed has the highest FAP assignment probability up to 200 m",
         std::to_string(ok5) + "/" + std::to_string(pts5) + " points, sweep " + fmt("%.1f s", s) + "; " +
             row_values(t, Algorithm::Proposed, fap, 200) + " " + row_values(t, Algorithm::RssPathLoss, fap, 200) +
             " " + row_values(t, Algorithm::Speed, fap, 200));

  int pts6 = 0;
  int ok6 = 0;
  for (double d : t.distances()) {
    if (d > 300.0) continue;
    ++pts6;
    const double pr = mean(d, Algorithm::Proposed, Metric::HoPerUe);
    ok6 += pr <= mean(d, Algorithm::Speed, Metric::HoPerUe) && pr <= mean(d, Algorithm::Rss, Metric::HoPerUe) &&
           pr <= mean(d, Algorithm::RssPathLoss, Metric::HoPerUe);
  }
  const double far = t.distances().back();
  const bool exceeds = mean(far, Algorithm::Proposed, Metric::HoPerUe) > mean(far, Algorithm::Rss, Metric::HoPerUe);
  const Metric ho = Metric::HoPerUe;
  report(6, pts6 > 0 && ok6 >= 0.8 * pts6, "proposed has the fewest handovers up to 300 m",
         std::to_string(ok6) + "/" + std::to_string(pts6) + " points below speed, rss and rss-pathloss; " +
             row_values(t, Algorithm::Proposed, ho, 1e9) + " " + row_values(t, Algorithm::Rss, ho, 1e9) +
             "; at " + fmt("%g m", far) + " proposed " + (exceeds ? "exceeds" : "does not exceed") +
             " rss (reported only)");
}

void scale_invariance() {
  int mismatched = 0;
  std::size_t events = 0;
  for (std::uint64_t seed : {3u, 11u, 29u}) {
    for (double d : {50.0, 250.0}) {
      SimConfig a;
      a.seed = seed;
      a.enb_fap_distance_m = d;
      a.sim_duration_s = 30.0;
      a.alpha = 0.0;
      SimConfig b = a;
      b.macro_tx_dbm += 10.0;
      b.fap_tx_dbm += 10.0;
      b.s_f_th_dbm += 10.0;
      b.rsrp_th_f_dbm += 10.0;
      b.ho_failure_threshold_dbm += 10.0;
      b.noise_figure_db += 10.0;
      const RunResult ra = engine::run_comparison(a, kAllAlgorithms);
      const RunResult rb = engine::run_comparison(b, kAllAlgorithms);
      for (std::size_t i = 0; i < ra.runs.size(); ++i) {
        events += ra.runs[i].log.events.size();
        mismatched += ra.runs[i].log.to_csv() != rb.runs[i].log.to_csv();
      }
    }
  }
  report(7, mismatched == 0, "+10 dB on every power and dBm threshold leaves event logs unchanged",
         std::to_string(mismatched) + " of 24 logs differ, " + std::to_string(events) + " events compared");
}

long inbound_completions(const EventLog& log) {
  long n = 0;
  for (const Event& e : log.events) {
    n += e.type == EventType::HoComplete && e.from == kMacroCellId && e.to != kMacroCellId;
  }
  return n;
}

void speed_gating() {
  const Algorithm algs[] = {Algorithm::Speed, Algorithm::Proposed};
  long fast[2] = {0, 0};
  long slow[2] = {0, 0};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SimConfig c;
    c.seed = seed;
    c.sim_duration_s = 60.0;
    c.mue_speeds_kmh = {120.0};
    c.fue_speed_kmh = 120.0;
    const RunResult r = engine::run_comparison(c, algs);
    c.mue_speeds_kmh = {3.0};
    c.fue_speed_kmh = 3.0;
    const RunResult q = engine::run_comparison(c, algs);
    for (int i = 0; i < 2; ++i) {
      fast[i] += inbound_completions(r.runs[static_cast<std::size_t>(i)].log);
      slow[i] += inbound_completions(q.runs[static_cast<std::size_t>(i)].log);
    }
  }
  const bool ok = fast[0] == 0 && fast[1] == 0 && slow[0] > 0 && slow[1] > 0;
  report(8, ok, "no macro-to-femto handover at 120 km/h, some at 3 km/h",
         "120 km/h speed " + std::to_string(fast[0]) + " proposed " + std::to_string(fast[1]) +
             "; 3 km/h speed " + std::to_string(slow[0]) + " proposed " + std::to_string(slow[1]) +
             " over 10 seeds");
}

void geometry() {
  int checked = 0;
  int violations = 0;
  double min_gap = 1e9;
  for (double d = 50.0; d <= 500.0; d += 50.0) {
    SimConfig c;
    c.enb_fap_distance_m = d;
    c.shadowing_macro_sigma_db = 0.0;
    c.shadowing_femto_sigma_db = 0.0;
    const Scenario s = build_scenario(c);
    const auto p = PropagationParams::from(c);
    for (const Cell& fap : s.cells) {
      if (fap.kind != CellKind::Femto) continue;
      const Box apt = s.building.apartment(fap.apartment / s.building.cols, fap.apartment % s.building.cols);
      for (double fx : {0.05, 0.5, 0.95}) {
        for (double fy : {0.05, 0.5, 0.95}) {
          const Point ue{apt.min.x + fx * (apt.max.x - apt.min.x), apt.min.y + fy * (apt.max.y - apt.min.y)};
          const double gap = propagation::link_path_loss_db(s, s.macro(), ue, p) -
                             propagation::link_path_loss_db(s, fap, ue, p);
          min_gap = std::min(min_gap, gap);
          violations += gap > 0.0 ? 0 : 1;
          ++checked;
        }
      }
    }
  }
  report(9, violations == 0 && checked > 0, "co-located FAP link has lower path loss than the macro link",
         std::to_string(checked) + " positions over 50..500 m, smallest margin " + fmt("%.1f dB", min_gap));
}

}  // namespace

int main() {
  decision_oracle();
  filter_oracle();
  determinism();
  hysteresis();
  trends();
  scale_invariance();
  speed_gating();
  geometry();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

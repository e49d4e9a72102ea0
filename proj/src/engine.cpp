#include "femtoho/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "femtoho/filtering.hpp"
#include "femtoho/mobility.hpp"
#include "femtoho/propagation.hpp"
#include "femtoho/rng.hpp"
#include "femtoho/scenario.hpp"

namespace femtoho {

namespace {

void append_cell(std::string& out, CellId id) {
  if (id == kNoCell) {
    out += '-';
  } else {
    out += std::to_string(id);
  }
}

}  // namespace

std::string EventLog::to_csv() const {
  std::string out(kEventLogHeader);
  out += '\n';
  for (const Event& e : events) {
    out += std::to_string(e.tick);
    out += ',';
    out += std::to_string(e.ue_id);
    out += ',';
    out += to_token(e.type);
    out += ',';
    append_cell(out, e.from);
    out += ',';
    append_cell(out, e.to);
    out += ',';
    out += to_token(e.reason);
    out += '\n';
  }
  return out;
}

const AlgorithmRun& RunResult::at(Algorithm a) const {
  for (const auto& r : runs) {
    if (r.algorithm == a) return r;
  }
  throw std::out_of_range("algorithm not part of this run: " + std::string(to_token(a)));
}

namespace engine {

namespace {

struct UeRuntime {
  MobilityState mobility;
  MobilityParams mobility_params;
  RandomStream mobility_rng;
  RandomStream noise_rng;
  std::vector<FilterState> filters;  // per cell
  bool counted = false;
};

struct AlgorithmRuntime {
  Algorithm algorithm;
  std::vector<HandoverState> states;  // per UE
  std::vector<int> load;              // per cell, snapshot at tick start
  EventLog log;
  MetricsAccumulator metrics;
};

CellId strongest_allowed(const Scenario& s, const Ue& ue, std::span<const double> rsrp) {
  CellId best = kNoCell;
  double best_rsrp = 0.0;
  for (const Cell& cell : s.cells) {
    if (!ue.allows(cell)) continue;
    const double r = rsrp[static_cast<std::size_t>(cell.id)];
    if (best == kNoCell || r > best_rsrp) {
      best = cell.id;
      best_rsrp = r;
    }
  }
  return best;
}

[[noreturn]] void non_finite(UeId ue, CellId cell, std::int64_t tick) {
  throw ModelError("non-finite link budget for ue " + std::to_string(ue) + ", cell " +
                   std::to_string(cell) + " at tick " + std::to_string(tick));
}

}  // namespace

RunResult run(const SimConfig& config) {
  const Algorithm one[] = {config.algorithm};
  return run_comparison(config, one);
}

RunResult run_comparison(const SimConfig& config, std::span<const Algorithm> algorithms) {
  const Scenario scenario = build_scenario(config);
  const PropagationParams prop = PropagationParams::from(config);
  const ShadowingTable shadowing(scenario, prop);
  const DecisionConfig dcfg = DecisionConfig::from(config);
  const CombineParams combine{config.alpha};

  const std::size_t n_cells = scenario.cells.size();
  const std::size_t n_ues = scenario.ues.size();
  const double dt = config.tick_s;

  // Static per-link inputs.
  std::vector<char> allowed(n_ues * n_cells);
  for (const Ue& ue : scenario.ues) {
    for (const Cell& cell : scenario.cells) {
      allowed[static_cast<std::size_t>(ue.id) * n_cells + static_cast<std::size_t>(cell.id)] =
          ue.allows(cell) ? 1 : 0;
    }
  }

  std::vector<UeRuntime> ues;
  ues.reserve(n_ues);
  int counted_ues = 0;
  for (const Ue& ue : scenario.ues) {
    const auto id = static_cast<std::uint64_t>(ue.id);
    UeRuntime rt{
        .mobility = {ue.position, ue.speed_kmh, ue.heading_rad, config.epoch_s},
        .mobility_params = {config.epoch_s, scenario.bbox},
        .mobility_rng = RandomStream(config.seed, StreamPurpose::Mobility, id),
        .noise_rng = RandomStream(config.seed, StreamPurpose::MeasurementNoise, id),
        .filters = std::vector<FilterState>(n_cells, FilterState{config.beta, std::nullopt}),
        .counted = ue.role == UeRole::Mue || config.include_fues_in_metrics,
    };
    if (ue.role == UeRole::Fue && config.confine_fues) {
      rt.mobility_params.bounds = scenario.building.bounds;
    }
    counted_ues += rt.counted ? 1 : 0;
    ues.push_back(std::move(rt));
  }

  std::vector<AlgorithmRuntime> algs;
  for (Algorithm a : algorithms) {
    algs.push_back({a, std::vector<HandoverState>(n_ues), std::vector<int>(n_cells, 0), {},
                    MetricsAccumulator(a, counted_ues)});
  }

  struct CellGrid {
    bool inside = false;
    int col = 0;
    int row = 0;
  };
  std::vector<CellGrid> cell_grid(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) {
    CellGrid& g = cell_grid[c];
    g.inside = grid_index(scenario.building, scenario.cells[c].position, g.col, g.row);
  }

  std::vector<LinkSample> links(n_cells);
  std::vector<double> raw(n_cells);
  std::vector<double> filtered(n_cells);
  std::vector<double> filtered_mw(n_cells);

  // Initial attachment from noise-free RSRP at the starting positions.
  for (const Ue& ue : scenario.ues) {
    propagation::measure_links(scenario, ue.position, shadowing.row(ue.id), prop, links);
    for (std::size_t c = 0; c < n_cells; ++c) raw[c] = links[c].rsrp_dbm;
    const CellId cell = strongest_allowed(scenario, ue, raw);
    const auto u = static_cast<std::size_t>(ue.id);
    for (auto& alg : algs) {
      alg.states[u].serving_cell_id = cell;
      alg.log.events.push_back({0, ue.id, EventType::Attach, kNoCell, cell, Reason::Initial});
      if (ues[u].counted) alg.metrics.record_initial(cell != kMacroCellId);
    }
  }

  DecisionInput input;
  input.candidates.resize(n_cells);
  const double noise_mw = dbm_to_mw(prop.noise_floor_dbm);
  const std::int64_t ticks = config.tick_count();

  for (std::int64_t tick = 1; tick <= ticks; ++tick) {
    const double now = static_cast<double>(tick) * dt;
    for (auto& alg : algs) {
      std::fill(alg.load.begin(), alg.load.end(), 0);
      for (const auto& st : alg.states) ++alg.load[static_cast<std::size_t>(st.serving_cell_id)];
    }

    for (const Ue& ue : scenario.ues) {
      const auto u = static_cast<std::size_t>(ue.id);
      UeRuntime& rt = ues[u];

      // 1. mobility
      rt.mobility = mobility::step(rt.mobility, dt, rt.mobility_params, rt.mobility_rng);
      const Point pos = rt.mobility.position;

      // 2. measurement, 3. filtering
      const auto shadow = shadowing.row(ue.id);
      double total_mw = noise_mw;
      int ue_col = 0;
      int ue_row = 0;
      const bool ue_in_grid = grid_index(scenario.building, pos, ue_col, ue_row);
      const bool indoor = scenario.building.contains(pos);
      for (std::size_t c = 0; c < n_cells; ++c) {
        const Cell& cell = scenario.cells[c];
        const double d2 = distance_squared(cell.position, pos);
        double pl = 0.0;
        if (cell.kind == CellKind::Macro) {
          pl = propagation::macro_path_loss_sq(d2, indoor, prop);
        } else {
          const CellGrid& g = cell_grid[c];
          const int walls = ue_in_grid && g.inside
                                ? std::abs(ue_col - g.col) + std::abs(ue_row - g.row)
                                : wall_count(scenario, cell.position, pos);
          pl = propagation::femto_path_loss_sq(d2, walls, prop);
        }
        double r = cell.tx_power_dbm - pl - shadow[c];
        if (config.meas_noise_sigma_db > 0.0) r += config.meas_noise_sigma_db * rt.noise_rng.normal();
        if (!std::isfinite(r)) non_finite(ue.id, cell.id, tick);
        raw[c] = r;
        links[c].path_loss_db = pl;
        filtered[c] = filtering::filter_step(rt.filters[c], r);
        filtered_mw[c] = dbm_to_mw(filtered[c]);
        total_mw += filtered_mw[c];
      }

      // 4. decision inputs shared by every algorithm
      const double speed_ms = rt.mobility.speed_kmh / 3.6;
      const double vx = speed_ms * std::cos(rt.mobility.heading_rad);
      const double vy = speed_ms * std::sin(rt.mobility.heading_rad);
      input.ue_id = ue.id;
      input.speed_kmh = rt.mobility.speed_kmh;
      input.speed_class =
          mobility::speed_class(rt.mobility.speed_kmh, config.speed_low_kmh, config.speed_high_kmh);
      input.traffic = ue.traffic;
      input.required_rate_bps = ue.required_rate_bps;
      for (std::size_t c = 0; c < n_cells; ++c) {
        const Cell& cell = scenario.cells[c];
        CandidateLink& cand = input.candidates[c];
        cand.cell_id = cell.id;
        cand.kind = cell.kind;
        cand.raw_rsrp_dbm = raw[c];
        cand.filtered_rsrp_dbm = filtered[c];
        cand.path_loss_db = links[c].path_loss_db;
        cand.in_whitelist = allowed[u * n_cells + c] != 0;
        cand.capacity_ues = cell.capacity_ues;
        // Only cells the UE may attach to can become a decision target.
        cand.sinr_db = cand.in_whitelist ? filtered[c] - mw_to_dbm(total_mw - filtered_mw[c])
                                         : std::numeric_limits<double>::quiet_NaN();
        cand.combined_dbm = filtering::combined_parameter(filtered[c], filtered[0], combine);
        cand.heading_toward =
            vx * (cell.position.x - pos.x) + vy * (cell.position.y - pos.y) > 0.0;
      }

      for (auto& alg : algs) {
        HandoverState& st = alg.states[u];
        const auto serving = static_cast<std::size_t>(st.serving_cell_id);

        Decision decision;
        if (!st.executing()) {
          input.serving_cell_id = st.serving_cell_id;
          input.serving_kind = scenario.cells[serving].kind;
          input.sinr_serving_db = input.candidates[serving].sinr_db;
          for (std::size_t c = 0; c < n_cells; ++c) input.candidates[c].load_ues = alg.load[c];
          decision = handover::decide(alg.algorithm, input, dcfg);
        }

        // 5. TTT / execution
        ExecutionInput exec{now, dt, raw[serving], kNoCell};
        if (st.executing()) exec.strongest_allowed = strongest_allowed(scenario, ue, raw);
        const StepEvents events = handover::apply_ttt_and_execute(st, decision, exec, dcfg);

        // 6. metrics
        for (const HandoverEvent& e : events) {
          alg.log.events.push_back({tick, ue.id, e.type, e.from, e.to, e.reason});
          if (rt.counted) alg.metrics.record(e);
        }
        if (rt.counted) alg.metrics.record_tick(st.serving_cell_id != kMacroCellId);
      }
    }
  }

  RunResult result;
  for (auto& alg : algs) {
    result.runs.push_back({alg.algorithm, std::move(alg.log), alg.metrics.finalize()});
  }
  return result;
}

int thread_count_from_env() {
  int n = 0;
  if (const char* env = std::getenv("FEMTOHO_THREADS")) n = std::atoi(env);
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, n);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 0) threads = thread_count_from_env();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < n && !failed; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::vector<MetricsReport>> run_replications(const SimConfig& config, int n,
                                                         std::uint64_t base_seed,
                                                         std::span<const Algorithm> algorithms,
                                                         int threads) {
  if (n < 1) throw ConfigError("replications must be ≥ 1");
  require_valid(config);
  std::vector<std::vector<MetricsReport>> out(static_cast<std::size_t>(n));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    SimConfig c = config;
    c.seed = base_seed + i;
    RunResult r = run_comparison(c, algorithms);
    for (auto& a : r.runs) out[i].push_back(a.report);
  });
  return out;
}

}  // namespace engine
}  // namespace femtoho

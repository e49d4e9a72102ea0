#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "femtoho/config.hpp"
#include "femtoho/handover.hpp"
#include "femtoho/metrics.hpp"

namespace femtoho {

struct Event {
  std::int64_t tick = 0;
  UeId ue_id = -1;
  EventType type = EventType::Attach;
  CellId from = kNoCell;
  CellId to = kNoCell;
  Reason reason = Reason::None;
};

inline constexpr std::string_view kEventLogHeader = "tick,ue_id,event,from_cell,to_cell,reason";

/// Handover events of one run in (tick, ue) order. Serialized as
/// `tick,ue_id,event,from_cell,to_cell,reason`, `-` standing for no cell.
struct EventLog {
  std::vector<Event> events;

  std::string to_csv() const;
};

struct AlgorithmRun {
  Algorithm algorithm = Algorithm::Proposed;
  EventLog log;
  MetricsReport report;
};

struct RunResult {
  std::vector<AlgorithmRun> runs;  // in requested algorithm order

  const AlgorithmRun& at(Algorithm a) const;
};

namespace engine {

/// Runs config.algorithm.
RunResult run(const SimConfig& config);

/// Evaluates every algorithm on one shared mobility and radio trace, so
/// results are paired. Each algorithm's output equals a standalone run.
RunResult run_comparison(const SimConfig& config, std::span<const Algorithm> algorithms);

/// n runs with seeds base_seed + i, reports in seed order regardless of how
/// many threads executed them. Inner vectors follow `algorithms`.
std::vector<std::vector<MetricsReport>> run_replications(const SimConfig& config, int n,
                                                         std::uint64_t base_seed,
                                                         std::span<const Algorithm> algorithms,
                                                         int threads = 0);

/// FEMTOHO_THREADS if set (0 = auto), else hardware concurrency.
int thread_count_from_env();

/// Runs fn(0..n-1) on up to `threads` workers (0 = thread_count_from_env()).
/// Rethrows the first exception after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace engine
}  // namespace femtoho

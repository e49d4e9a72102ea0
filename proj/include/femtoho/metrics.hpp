#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "femtoho/config.hpp"
#include "femtoho/handover.hpp"

namespace femtoho {

struct MetricsReport {
  Algorithm algorithm = Algorithm::Proposed;
  /// Share of counted UE-ticks spent attached to any femtocell.
  double fap_assignment_probability = 0.0;
  /// Completed handovers per counted UE.
  double ho_per_ue = 0.0;
  std::int64_t ho_count = 0;
  std::int64_t pingpong_count = 0;
  std::int64_t ho_failure_count = 0;
  std::int64_t ue_ticks = 0;
  std::int64_t fap_ue_ticks = 0;
  int counted_ues = 0;
};

/// Metric columns of a sweep, in output order.
enum class Metric { FapAssignmentProbability, HoPerUe, HoCount, PingPongCount, HoFailureCount };
inline constexpr std::array<Metric, 5> kMetrics = {
    Metric::FapAssignmentProbability, Metric::HoPerUe, Metric::HoCount, Metric::PingPongCount,
    Metric::HoFailureCount};

std::string_view to_token(Metric m);
double metric_value(const MetricsReport& report, Metric m);

/// Per-run accumulator. Feed it the counted population only.
class MetricsAccumulator {
 public:
  MetricsAccumulator() = default;
  MetricsAccumulator(Algorithm algorithm, int counted_ues)
      : algorithm_(algorithm), counted_ues_(counted_ues) {}

  void record_initial(bool on_fap);
  void record_tick(bool on_fap);
  void record(const HandoverEvent& event);

  MetricsReport finalize() const;

 private:
  Algorithm algorithm_ = Algorithm::Proposed;
  int counted_ues_ = 0;
  std::int64_t initial_on_fap_ = 0;
  std::int64_t initial_total_ = 0;
  std::int64_t ue_ticks_ = 0;
  std::int64_t fap_ue_ticks_ = 0;
  std::int64_t ho_ = 0;
  std::int64_t pingpong_ = 0;
  std::int64_t failures_ = 0;
};

struct MetricStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single replication
};

/// Mean and sample standard deviation. The values are sorted before the
/// reduction so the result does not depend on replication order.
MetricStats summarize(std::span<const double> values);

struct SweepRow {
  double distance_m = 0.0;
  Algorithm algorithm = Algorithm::Proposed;
  int replications = 0;
  std::array<MetricStats, kMetrics.size()> stats{};

  const MetricStats& at(Metric m) const { return stats[static_cast<std::size_t>(m)]; }
};

struct SweepTable {
  std::vector<SweepRow> rows;  // distance-major, algorithms in request order

  const SweepRow* find(double distance_m, Algorithm algorithm) const;
  std::vector<Algorithm> algorithms() const;
  std::vector<double> distances() const;
};

SweepRow aggregate(double distance_m, Algorithm algorithm, std::span<const MetricsReport> reports);

/// One row per (distance, algorithm). Each distance point runs n_reps
/// replications with seeds config.seed + i, all algorithms on shared traces.
SweepTable sweep(const SimConfig& config, std::span<const double> distances, int n_reps,
                 std::span<const Algorithm> algorithms, int threads = 0);

inline constexpr std::string_view kSweepCsvHeader = "distance_m,algorithm,metric,mean,std,replications";

/// Long-format CSV, one line per (row, metric), floats at 6 significant digits.
std::string to_csv(const SweepTable& table);

/// `start:stop:step`, stop inclusive.
std::vector<double> parse_distance_range(std::string_view spec);

}  // namespace femtoho

#include "femtoho/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "femtoho/engine.hpp"

namespace femtoho {

std::string_view to_token(Metric m) {
  switch (m) {
    case Metric::FapAssignmentProbability: return "fap_assignment_probability";
    case Metric::HoPerUe: return "ho_per_ue";
    case Metric::HoCount: return "ho_count";
    case Metric::PingPongCount: return "pingpong_count";
    case Metric::HoFailureCount: return "ho_failure_count";
  }
  return "unknown";
}

double metric_value(const MetricsReport& r, Metric m) {
  switch (m) {
    case Metric::FapAssignmentProbability: return r.fap_assignment_probability;
    case Metric::HoPerUe: return r.ho_per_ue;
    case Metric::HoCount: return static_cast<double>(r.ho_count);
    case Metric::PingPongCount: return static_cast<double>(r.pingpong_count);
    case Metric::HoFailureCount: return static_cast<double>(r.ho_failure_count);
  }
  return 0.0;
}

void MetricsAccumulator::record_initial(bool on_fap) {
  ++initial_total_;
  if (on_fap) ++initial_on_fap_;
}

void MetricsAccumulator::record_tick(bool on_fap) {
  ++ue_ticks_;
  if (on_fap) ++fap_ue_ticks_;
}

void MetricsAccumulator::record(const HandoverEvent& event) {
  switch (event.type) {
    case EventType::HoComplete: ++ho_; break;
    case EventType::PingPong: ++pingpong_; break;
    case EventType::HoFailure: ++failures_; break;
    case EventType::Attach:
    case EventType::HoStart: break;
  }
}

MetricsReport MetricsAccumulator::finalize() const {
  MetricsReport r;
  r.algorithm = algorithm_;
  r.counted_ues = counted_ues_;
  r.ue_ticks = ue_ticks_;
  r.fap_ue_ticks = fap_ue_ticks_;
  r.ho_count = ho_;
  r.pingpong_count = pingpong_;
  r.ho_failure_count = failures_;
  if (ue_ticks_ > 0) {
    r.fap_assignment_probability =
        static_cast<double>(fap_ue_ticks_) / static_cast<double>(ue_ticks_);
  } else if (initial_total_ > 0) {
    r.fap_assignment_probability =
        static_cast<double>(initial_on_fap_) / static_cast<double>(initial_total_);
  }
  if (counted_ues_ > 0) r.ho_per_ue = static_cast<double>(ho_) / counted_ues_;
  return r;
}

MetricStats summarize(std::span<const double> values) {
  MetricStats s;
  if (values.empty()) return s;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  if (v.front() == v.back()) {
    s.mean = v.front();
    return s;
  }
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

SweepRow aggregate(double distance_m, Algorithm algorithm, std::span<const MetricsReport> reports) {
  SweepRow row;
  row.distance_m = distance_m;
  row.algorithm = algorithm;
  row.replications = static_cast<int>(reports.size());
  std::vector<double> values(reports.size());
  for (std::size_t m = 0; m < kMetrics.size(); ++m) {
    for (std::size_t i = 0; i < reports.size(); ++i) values[i] = metric_value(reports[i], kMetrics[m]);
    row.stats[m] = summarize(values);
  }
  return row;
}

const SweepRow* SweepTable::find(double distance_m, Algorithm algorithm) const {
  for (const auto& r : rows) {
    if (r.algorithm == algorithm && std::abs(r.distance_m - distance_m) < 1e-9) return &r;
  }
  return nullptr;
}

std::vector<Algorithm> SweepTable::algorithms() const {
  std::vector<Algorithm> out;
  for (const auto& r : rows) {
    if (std::find(out.begin(), out.end(), r.algorithm) == out.end()) out.push_back(r.algorithm);
  }
  return out;
}

std::vector<double> SweepTable::distances() const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (out.empty() || std::abs(out.back() - r.distance_m) > 1e-9) out.push_back(r.distance_m);
  }
  return out;
}

SweepTable sweep(const SimConfig& config, std::span<const double> distances, int n_reps,
                 std::span<const Algorithm> algorithms, int threads) {
  if (distances.empty()) throw ConfigError("sweep needs at least one distance");
  if (algorithms.empty()) throw ConfigError("sweep needs at least one algorithm");
  if (n_reps < 1) throw ConfigError("replications must be ≥ 1");
  for (std::size_t i = 1; i < distances.size(); ++i) {
    if (!(distances[i] > distances[i - 1])) throw ConfigError("sweep distances must be ascending");
  }
  for (double d : distances) {
    SimConfig c = config;
    c.enb_fap_distance_m = d;
    require_valid(c);
  }

  const std::size_t reps = static_cast<std::size_t>(n_reps);
  // reports[distance][rep][algorithm]
  std::vector<std::vector<std::vector<MetricsReport>>> reports(
      distances.size(), std::vector<std::vector<MetricsReport>>(reps));
  engine::parallel_for(distances.size() * reps, threads, [&](std::size_t job) {
    const std::size_t d = job / reps;
    const std::size_t i = job % reps;
    SimConfig c = config;
    c.enb_fap_distance_m = distances[d];
    c.seed = config.seed + i;
    for (auto& run : engine::run_comparison(c, algorithms).runs) {
      reports[d][i].push_back(run.report);
    }
  });

  SweepTable table;
  std::vector<MetricsReport> per_alg(reps);
  for (std::size_t d = 0; d < distances.size(); ++d) {
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      for (std::size_t i = 0; i < reps; ++i) per_alg[i] = reports[d][i][a];
      table.rows.push_back(aggregate(distances[d], algorithms[a], per_alg));
    }
  }
  return table;
}

namespace {

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

}  // namespace

std::string to_csv(const SweepTable& table) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& row : table.rows) {
    for (Metric m : kMetrics) {
      const MetricStats& s = row.at(m);
      out += g6(row.distance_m);
      out += ',';
      out += to_token(row.algorithm);
      out += ',';
      out += to_token(m);
      out += ',';
      out += g6(s.mean);
      out += ',';
      out += g6(s.std);
      out += ',';
      out += std::to_string(row.replications);
      out += '\n';
    }
  }
  return out;
}

std::vector<double> parse_distance_range(std::string_view spec) {
  auto number = [&](std::string_view s) {
    const std::string str(s);
    char* end = nullptr;
    const double v = std::strtod(str.c_str(), &end);
    if (str.empty() || end != str.c_str() + str.size() || !std::isfinite(v)) {
      throw ConfigError("bad distance range '" + std::string(spec) + "'");
    }
    return v;
  };

  const auto c1 = spec.find(':');
  if (c1 == std::string_view::npos) return {number(spec)};
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw ConfigError("bad distance range '" + std::string(spec) + "' (expected start:stop:step)");
  }
  const double start = number(spec.substr(0, c1));
  const double stop = number(spec.substr(c1 + 1, c2 - c1 - 1));
  const double step = number(spec.substr(c2 + 1));
  if (!(step > 0.0) || stop < start || start < 0.0) {
    throw ConfigError("bad distance range '" + std::string(spec) +
                      "' (need 0 ≤ start ≤ stop and step > 0)");
  }
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

}  // namespace femtoho

#include "femtoho/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "femtoho/config_file.hpp"
#include "femtoho/engine.hpp"
#include "femtoho/io.hpp"
#include "femtoho/metrics.hpp"
#include "femtoho/plot_data.hpp"

namespace femtoho {

std::optional<PresetName> parse_preset(std::string_view token) {
  if (token == "fig10") return PresetName::Fig10;
  if (token == "fig11") return PresetName::Fig11;
  if (token == "single-run") return PresetName::SingleRun;
  return std::nullopt;
}

ExperimentPreset resolve_preset(PresetName name, const SimConfig& config) {
  ExperimentPreset p;
  p.name = name;
  p.config = config;
  if (name == PresetName::SingleRun) {
    p.distances = {config.enb_fap_distance_m};
    p.algorithms = {config.algorithm};
    p.replications = 1;
    return p;
  }
  p.distances = parse_distance_range("50:500:50");
  p.algorithms.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
  p.replications = 20;
  return p;
}

namespace cli {

namespace {

struct Options {
  std::string config_path;
  std::vector<std::string> set;
  std::string algorithm;
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::string distances;
  std::string out = "out";
  std::string preset;
  bool emit_plot_data = false;
};

std::vector<Algorithm> parse_algorithm_list(const std::string& text) {
  if (text == "all") return {std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
  std::vector<Algorithm> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view token = rest.substr(0, comma);
    auto a = parse_algorithm(token);
    if (!a) throw ConfigError("unknown algorithm '" + std::string(token) + "'");
    out.push_back(*a);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("empty algorithm list");
  return out;
}

SimConfig load_config(const Options& o) {
  SimConfig config;
  if (!o.config_path.empty()) apply_config_file(config, o.config_path);
  for (const auto& kv : o.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) config.seed = *o.seed;
  if (!o.algorithm.empty()) {
    const auto list = parse_algorithm_list(o.algorithm);
    config.algorithm = list.front();
  }
  return config;
}

ExperimentPreset build_experiment(const Options& o, PresetName fallback, bool all_algorithms) {
  const SimConfig config = load_config(o);
  PresetName name = fallback;
  if (!o.preset.empty()) {
    auto p = parse_preset(o.preset);
    if (!p) throw ConfigError("unknown preset '" + o.preset + "'");
    name = *p;
  }
  ExperimentPreset e = resolve_preset(name, config);
  if (all_algorithms) {
    e.algorithms.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
  } else if (!o.algorithm.empty()) {
    e.algorithms = parse_algorithm_list(o.algorithm);
  }
  if (!o.distances.empty()) e.distances = parse_distance_range(o.distances);
  if (o.replications) e.replications = *o.replications;
  if (e.replications < 1) throw ConfigError("--replications must be ≥ 1");
  require_valid(e.config);
  return e;
}

void print_violations(const std::vector<std::string>& v) {
  for (const auto& line : v) std::cerr << "  " << line << '\n';
}

int cmd_validate(const Options& o) {
  const SimConfig config = load_config(o);
  const auto violations = validate_config(config);
  if (violations.empty()) {
    std::cout << "config OK\n";
    return kExitOk;
  }
  std::cerr << "invalid configuration:\n";
  print_violations(violations);
  return kExitValidation;
}

std::string single_run_csv(const SimConfig& config, const MetricsReport& report) {
  SweepTable t;
  const MetricsReport one[] = {report};
  t.rows.push_back(aggregate(config.enb_fap_distance_m, report.algorithm, one));
  return to_csv(t);
}

int cmd_run(const Options& o) {
  const SimConfig config = load_config(o);
  require_valid(config);
  const RunResult result = engine::run(config);
  const AlgorithmRun& run = result.runs.front();
  const std::filesystem::path out(o.out);
  write_file_atomic(out / "events.csv", run.log.to_csv());
  write_file_atomic(out / "metrics.csv", single_run_csv(config, run.report));
  std::printf("%s: fap_assignment_probability=%.6g ho_count=%lld pingpong=%lld failures=%lld\n",
              std::string(to_token(run.algorithm)).c_str(), run.report.fap_assignment_probability,
              static_cast<long long>(run.report.ho_count),
              static_cast<long long>(run.report.pingpong_count),
              static_cast<long long>(run.report.ho_failure_count));
  return kExitOk;
}

int cmd_sweep(const Options& o, bool compare) {
  const ExperimentPreset e =
      build_experiment(o, PresetName::SingleRun, compare);
  const SweepTable table = sweep(e.config, e.distances, e.replications, e.algorithms,
                                 engine::thread_count_from_env());
  const std::filesystem::path out(o.out);
  const char* name = compare ? "compare.csv" : "sweep.csv";
  write_file_atomic(out / name, to_csv(table));
  std::cout << "wrote " << (out / name).string() << " (" << table.rows.size() << " rows)\n";
  if (o.emit_plot_data || e.name != PresetName::SingleRun) {
    for (const auto& p : emit_plot_data(table, out)) std::cout << "wrote " << p.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(const std::vector<std::string>& args) {
  CLI::App app{"Two-tier macro/femtocell handover simulator", "femtoho"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Config file (key = value lines)");
    sub->add_option("--set", o.set, "Override one config key: key=value (repeatable)");
    sub->add_option("--seed", o.seed, "Base seed");
    sub->add_option("--algorithm", o.algorithm,
                    "rss | rss-pathloss | speed | proposed (sweep: comma list or 'all')");
  };
  auto add_experiment = [&](CLI::App* sub) {
    sub->add_option("--replications", o.replications, "Replications per distance");
    sub->add_option("--distances", o.distances, "start:stop:step in metres (stop inclusive)");
    sub->add_option("--preset", o.preset, "fig10 | fig11 | single-run");
    sub->add_flag("--emit-plot-data", o.emit_plot_data, "Write per-figure .dat files and a gnuplot script");
  };

  auto* validate = app.add_subcommand("validate", "Check a config and exit");
  add_common(validate);
  auto* run = app.add_subcommand("run", "Single run: events.csv and metrics.csv");
  add_common(run);
  run->add_option("--out", o.out, "Output directory");
  auto* sweep_cmd = app.add_subcommand("sweep", "Distance sweep: sweep.csv");
  add_common(sweep_cmd);
  add_experiment(sweep_cmd);
  sweep_cmd->add_option("--out", o.out, "Output directory");
  auto* compare = app.add_subcommand("compare", "All four algorithms on shared traces: compare.csv");
  add_common(compare);
  add_experiment(compare);
  compare->add_option("--out", o.out, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (validate->parsed()) return cmd_validate(o);
    if (run->parsed()) return cmd_run(o);
    if (sweep_cmd->parsed()) return cmd_sweep(o, false);
    if (compare->parsed()) return cmd_sweep(o, true);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace cli
}  // namespace femtoho

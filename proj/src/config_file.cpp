#include "femtoho/config_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>
#include <variant>

namespace femtoho {

namespace {

using Field = std::variant<double SimConfig::*, int SimConfig::*, bool SimConfig::*,
                           std::uint64_t SimConfig::*, std::vector<double> SimConfig::*,
                           Algorithm SimConfig::*, AdmissionMode SimConfig::*>;

struct Entry {
  const char* key;
  Field field;
};

#define FEMTOHO_FIELD(name) Entry{#name, &SimConfig::name}

const Entry kEntries[] = {
    FEMTOHO_FIELD(bandwidth_hz),
    FEMTOHO_FIELD(macro_tx_dbm),
    FEMTOHO_FIELD(fap_tx_dbm),
    FEMTOHO_FIELD(apartment_side_m),
    FEMTOHO_FIELD(grid_rows),
    FEMTOHO_FIELD(grid_cols),
    FEMTOHO_FIELD(faps_per_apartment),
    FEMTOHO_FIELD(csg_users_per_fap),
    FEMTOHO_FIELD(mue_count),
    FEMTOHO_FIELD(mue_annulus_m),
    FEMTOHO_FIELD(mue_csg_member),
    FEMTOHO_FIELD(mue_speeds_kmh),
    FEMTOHO_FIELD(fue_speed_kmh),
    FEMTOHO_FIELD(nonrealtime_fraction),
    FEMTOHO_FIELD(voip_rate_bps),
    FEMTOHO_FIELD(video_rate_bps),
    FEMTOHO_FIELD(nonrealtime_rate_bps),
    FEMTOHO_FIELD(fap_capacity_ues),
    FEMTOHO_FIELD(macro_capacity_ues),
    FEMTOHO_FIELD(tick_s),
    FEMTOHO_FIELD(sim_duration_s),
    FEMTOHO_FIELD(enb_fap_distance_m),
    FEMTOHO_FIELD(seed),
    FEMTOHO_FIELD(algorithm),
    FEMTOHO_FIELD(macro_pl_intercept_db),
    FEMTOHO_FIELD(macro_pl_slope_db),
    FEMTOHO_FIELD(macro_min_distance_m),
    FEMTOHO_FIELD(femto_pl_intercept_db),
    FEMTOHO_FIELD(femto_pl_slope_db),
    FEMTOHO_FIELD(femto_min_distance_m),
    FEMTOHO_FIELD(wall_loss_db),
    FEMTOHO_FIELD(o2i_penetration_db),
    FEMTOHO_FIELD(shadowing_macro_sigma_db),
    FEMTOHO_FIELD(shadowing_femto_sigma_db),
    FEMTOHO_FIELD(noise_figure_db),
    FEMTOHO_FIELD(meas_noise_sigma_db),
    FEMTOHO_FIELD(epoch_s),
    FEMTOHO_FIELD(confine_fues),
    FEMTOHO_FIELD(bbox_margin_m),
    FEMTOHO_FIELD(beta),
    FEMTOHO_FIELD(alpha),
    FEMTOHO_FIELD(hmm_db),
    FEMTOHO_FIELD(s_f_th_dbm),
    FEMTOHO_FIELD(rsrp_th_f_dbm),
    FEMTOHO_FIELD(speed_high_kmh),
    FEMTOHO_FIELD(speed_low_kmh),
    FEMTOHO_FIELD(ttt_reactive_s),
    FEMTOHO_FIELD(proactive_margin_reduction_db),
    FEMTOHO_FIELD(sinr_min_db),
    FEMTOHO_FIELD(exec_delay_s),
    FEMTOHO_FIELD(pingpong_window_s),
    FEMTOHO_FIELD(ho_failure_threshold_dbm),
    FEMTOHO_FIELD(admission),
    FEMTOHO_FIELD(include_fues_in_metrics),
};

#undef FEMTOHO_FIELD

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw ConfigError("bad value '" + std::string(value) + "' for " + std::string(key) +
                    " (expected " + expected + ")");
}

double parse_double(std::string_view key, std::string_view value) {
  // from_chars for double is not available everywhere; strtod on a copy.
  const std::string s(value);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) bad_value(key, value, "a number");
  return v;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view value) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value, "an integer");
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "true or false");
}

std::vector<double> parse_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    out.push_back(parse_double(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void set_config_value(SimConfig& config, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  for (const Entry& e : kEntries) {
    if (key != e.key) continue;
    std::visit(
        [&](auto member) {
          using T = std::remove_cvref_t<decltype(config.*member)>;
          if constexpr (std::is_same_v<T, double>) {
            config.*member = parse_double(key, value);
          } else if constexpr (std::is_same_v<T, int>) {
            config.*member = parse_int<int>(key, value);
          } else if constexpr (std::is_same_v<T, std::uint64_t>) {
            config.*member = parse_int<std::uint64_t>(key, value);
          } else if constexpr (std::is_same_v<T, bool>) {
            config.*member = parse_bool(key, value);
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            config.*member = parse_list(key, value);
          } else if constexpr (std::is_same_v<T, Algorithm>) {
            auto a = parse_algorithm(value);
            if (!a) bad_value(key, value, "rss | rss-pathloss | speed | proposed");
            config.*member = *a;
          } else {
            auto m = parse_admission(value);
            if (!m) bad_value(key, value, "headcount | rate");
            config.*member = *m;
          }
        },
        e.field);
    return;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_config_text(SimConfig& config, std::string_view text, std::string_view origin) {
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                        ": expected 'key = value', got '" + std::string(line) + "'");
    }
    try {
      set_config_value(config, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& err) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " + err.what());
    }
  }
}

void apply_config_file(SimConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str(), path.string());
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const Entry& e : kEntries) keys.emplace_back(e.key);
  return keys;
}

std::string format_config(const SimConfig& config) {
  std::string out;
  for (const Entry& e : kEntries) {
    out += e.key;
    out += " = ";
    std::visit(
        [&](auto member) {
          using T = std::remove_cvref_t<decltype(config.*member)>;
          const T& v = config.*member;
          if constexpr (std::is_same_v<T, double>) {
            out += format_double(v);
          } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
            out += std::to_string(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            out += v ? "true" : "false";
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (i) out += ",";
              out += format_double(v[i]);
            }
          } else {
            out += to_token(v);
          }
        },
        e.field);
    out += '\n';
  }
  return out;
}

}  // namespace femtoho

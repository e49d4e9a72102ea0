#include "femtoho/plot_data.hpp"

#include <cstdio>
#include <string>

#include "femtoho/io.hpp"

namespace femtoho {

namespace {

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string script(const std::vector<Algorithm>& algorithms) {
  std::string s =
      "# gnuplot script; run `gnuplot plot_figures.gp` next to the .dat files.\n"
      "set terminal pngcairo size 800,560\n"
      "set key outside right\n"
      "set grid\n"
      "set xlabel 'Distance between eNB and FAP (m)'\n";
  auto plot = [&](const char* png, const char* ylabel, const char* dat) {
    s += "set output '";
    s += png;
    s += "'\nset ylabel '";
    s += ylabel;
    s += "'\nplot ";
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
      if (i) s += ", \\\n     ";
      s += "'";
      s += dat;
      s += "' using 1:" + std::to_string(i + 2) + " with linespoints title '";
      s += to_token(algorithms[i]);
      s += "'";
    }
    s += "\n";
  };
  plot("fig10_assignment_probability.png", "Assignment probability to FAP", kFig10File);
  plot("fig11_expected_handovers.png", "Expected handovers per UE", kFig11File);
  return s;
}

}  // namespace

std::string plot_table(const SweepTable& table, Metric metric) {
  const auto algorithms = table.algorithms();
  std::string out = "# distance_m";
  for (Algorithm a : algorithms) {
    out += ' ';
    out += to_token(a);
  }
  out += '\n';
  for (double d : table.distances()) {
    out += g6(d);
    for (Algorithm a : algorithms) {
      const SweepRow* row = table.find(d, a);
      out += ' ';
      out += row ? g6(row->at(metric).mean) : std::string("nan");
    }
    out += '\n';
  }
  return out;
}

std::vector<std::filesystem::path> emit_plot_data(const SweepTable& table,
                                                  const std::filesystem::path& out_dir) {
  if (table.rows.empty()) throw OutputError("no sweep rows to plot");
  const std::string fig10 = plot_table(table, Metric::FapAssignmentProbability);
  const std::string fig11 = plot_table(table, Metric::HoPerUe);
  const std::string gp = script(table.algorithms());

  std::vector<std::filesystem::path> written = {out_dir / kFig10File, out_dir / kFig11File,
                                                out_dir / kPlotScriptFile};
  write_file_atomic(written[0], fig10);
  write_file_atomic(written[1], fig11);
  write_file_atomic(written[2], gp);
  return written;
}

}  // namespace femtoho

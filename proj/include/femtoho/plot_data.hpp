#pragma once

#include <filesystem>
#include <vector>

#include "femtoho/metrics.hpp"

namespace femtoho {

inline constexpr const char* kFig10File = "fig10_assignment_probability.dat";
inline constexpr const char* kFig11File = "fig11_expected_handovers.dat";
inline constexpr const char* kPlotScriptFile = "plot_figures.gp";

/// Whitespace-separated table: distance column then one mean column per
/// algorithm of `table`, preceded by a `#` header naming the columns.
std::string plot_table(const SweepTable& table, Metric metric);

/// Writes the assignment-probability and expected-handover tables plus a
/// gnuplot script that renders both. Nothing is written when the table is
/// empty (OutputError). Returns the written paths.
std::vector<std::filesystem::path> emit_plot_data(const SweepTable& table,
                                                  const std::filesystem::path& out_dir);

}  // namespace femtoho

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace roadfield {

/// Column-labelled numeric table shared by the CSV and plot emitters.
struct PlotTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Full-precision formatting (17 significant digits) so downstream
/// Richardson checks see unrounded values.
std::string format_full(double x);

/// Write bytes atomically (temp file + rename in the target directory).
void atomic_write(const std::filesystem::path& path, const std::string& bytes);

/// CSV with a comma-separated header; optional leading '#' comment lines.
void write_csv(const std::filesystem::path& path, const PlotTable& table,
               const std::vector<std::string>& comments = {});

enum class PlotStyle { curves_overlay, sweep_semilog };

/// Whitespace-separated data file plus a gnuplot script referencing it by
/// relative path. Deterministic bytes for a fixed table.
/// For sweep_semilog, `reference` draws a horizontal marker line.
void emit_plot_bundle(const std::filesystem::path& out_dir, const std::string& stem,
                      const PlotTable& table, PlotStyle style, double reference = 0.0);

}  // namespace roadfield

#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sccsa {

/// Values at or below zero are drawn at this floor on the log axis. The CSV
/// data itself is never altered.
inline constexpr double kLogPlotFloor = 1e-320;

/// Mean best-so-far curve read from a convergence CSV.
struct ConvergenceSeries {
  std::string label;
  std::vector<double> iterations;
  std::vector<double> mean;
};

/// Parses the `iteration,run_*,mean` layout written by export_convergence.
/// Throws IoError naming the offending row.
ConvergenceSeries read_convergence_csv(std::istream& in, std::string label);
ConvergenceSeries read_convergence_csv(const std::filesystem::path& path);

/// Self-contained SVG line chart of log10(mean best-so-far) vs iteration,
/// one polyline per series. Output is a pure function of the input.
std::string render_convergence_svg(std::span<const ConvergenceSeries> series, std::string_view title);

}  // namespace sccsa

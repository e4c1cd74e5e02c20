#include "sccsa/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "sccsa/error.hpp"

namespace sccsa {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string escape_xml(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1e-320 is subnormal and log10 of its stored value is slightly below -320.
constexpr double kLogFloorExponent = -320.0;

double to_log(double v) { return v > kLogPlotFloor ? std::log10(v) : kLogFloorExponent; }

bool parse_number(const std::string& text, double& out) {
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return !text.empty() && end == text.c_str() + text.size();
}

}  // namespace

ConvergenceSeries read_convergence_csv(std::istream& in, std::string label) {
  ConvergenceSeries series;
  series.label = std::move(label);
  std::string line;
  std::size_t row = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::istringstream ls(line);
    for (std::string f; std::getline(ls, f, ',');) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (row == 1) {
      if (fields.size() < 3 || fields.front() != "iteration" || fields.back() != "mean") {
        throw IoError("row 1: expected header 'iteration,run_*,...,mean'");
      }
      columns = fields.size();
      continue;
    }
    if (line.empty()) continue;
    if (fields.size() != columns) {
      throw IoError("row " + std::to_string(row) + ": expected " + std::to_string(columns) + " fields, got " +
                    std::to_string(fields.size()));
    }
    double iteration = 0.0;
    double mean = 0.0;
    if (!parse_number(fields.front(), iteration) || !parse_number(fields.back(), mean) || std::isnan(mean)) {
      throw IoError("row " + std::to_string(row) + ": non-numeric iteration or mean");
    }
    series.iterations.push_back(iteration);
    series.mean.push_back(mean);
  }
  if (columns == 0) throw IoError("row 1: empty file");
  if (series.mean.empty()) throw IoError("row 2: no data rows");
  return series;
}

ConvergenceSeries read_convergence_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return read_convergence_csv(in, path.stem().string());
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string render_convergence_svg(std::span<const ConvergenceSeries> series, std::string_view title) {
  if (series.empty()) throw ArgumentError("render_convergence_svg: no series");

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.mean.size(); ++i) {
      x_min = std::min(x_min, s.iterations[i]);
      x_max = std::max(x_max, s.iterations[i]);
      const double y = to_log(s.mean[i]);
      if (std::isfinite(y)) {
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (!std::isfinite(y_min)) y_min = y_max = 0.0;
  y_min = std::floor(y_min);
  y_max = std::ceil(y_max);
  if (y_max <= y_min) y_max = y_min + 1.0;
  if (x_max <= x_min) x_max = x_min + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << fmt("%.2f", kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(title) << "</text>\n";

  // y axis: one tick per decade, thinned to at most ~10 labels.
  const double span = y_max - y_min;
  const double step = std::max(1.0, std::ceil(span / 10.0));
  svg << "<g class=\"y-axis\" stroke=\"#ccc\">\n";
  for (double y = y_min; y <= y_max + 1e-9; y += step) {
    const std::string yy = fmt("%.2f", py(y));
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << yy << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << yy
        << "\"/>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << yy << "\" text-anchor=\"end\" dominant-baseline=\"middle\""
        << " stroke=\"none\" fill=\"black\">1e" << fmt("%.0f", y) << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"x-axis\" stroke=\"#ccc\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double x = x_min + (x_max - x_min) * k / 5.0;
    const std::string xx = fmt("%.2f", px(x));
    svg << "<line x1=\"" << xx << "\" y1=\"" << kTop << "\" x2=\"" << xx << "\" y2=\"" << kTop + plot_h << "\"/>\n"
        << "<text x=\"" << xx << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\" stroke=\"none\""
        << " fill=\"black\">" << fmt("%.0f", x) << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << fmt("%.2f", kLeft + plot_w / 2) << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\">Iteration</text>\n"
      << "<text x=\"18\" y=\"" << fmt("%.2f", kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fmt("%.2f", kTop + plot_h / 2) << ")\">Mean best-so-far fitness (log10)</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPalette.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].mean.size(); ++i) {
      if (i) svg << ' ';
      const double y = std::clamp(to_log(series[s].mean[i]), y_min, y_max);
      svg << fmt("%.2f", px(series[s].iterations[i])) << ',' << fmt("%.2f", py(y));
    }
    svg << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(s);
    svg << "<line x1=\"" << kLeft + plot_w + 12 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + plot_w + 36
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kLeft + plot_w + 42 << "\" y=\"" << ly << "\" dominant-baseline=\"middle\">"
        << escape_xml(series[s].label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace sccsa

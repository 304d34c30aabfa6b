#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hubring::svg {

struct Series {
  std::string label;
  std::string color;  // "#rrggbb"
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG line plot with axes, ticks and a legend.
struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;

  void write(const std::filesystem::path& path) const;
};

/// Self-contained SVG heatmap over a regular grid. values[r][c] maps row r to
/// the y axis (bottom to top) and column c to the x axis. A diverging map is
/// centered on zero, a sequential one starts at the minimum.
struct Heatmap {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  std::vector<std::vector<double>> values;
  bool diverging = false;

  void write(const std::filesystem::path& path) const;
};

}  // namespace hubring::svg

#pragma once

// Minimal static line plots as standalone SVG.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stvo {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool markers = true;
  bool dashed = false;
};

struct PlotAxes {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::optional<double> y_min;
  std::optional<double> y_max;
  int width = 640;
  int height = 420;
};

/// Non-finite points are skipped. Axis ranges default to the data extent.
void write_svg_plot(std::ostream& out, const PlotAxes& axes, const std::vector<PlotSeries>& series);

}  // namespace stvo

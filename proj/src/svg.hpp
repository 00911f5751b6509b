#pragma once

// Minimal native SVG plots: stacked panels of polylines and markers with axes.

#include <string>
#include <vector>

namespace frozenspec::detail {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool markers = false;  // points instead of a polyline
};

struct PlotPanel {
  std::string title;
  std::string xlabel, ylabel;
  std::vector<PlotSeries> series;
};

/// One SVG document with the panels stacked vertically. Non-finite points are skipped.
std::string svg_plot(const std::vector<PlotPanel>& panels, int width = 720, int panel_height = 300);

}  // namespace frozenspec::detail

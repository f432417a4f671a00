#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "otslab/analysis.hpp"
#include "otslab/graph.hpp"

namespace otslab {

struct PlotSeries {
  std::string name;
  std::string color;
  bool dashed = false;
  std::vector<std::pair<double, double>> points;  // (t, value)
};

/// Self-contained SVG line plot, one polyline per series; series longer
/// than `max_points` are downsampled for size (the CSV trace never is).
void write_line_plot_svg(std::ostream& out, const std::string& title,
                         const std::vector<PlotSeries>& series,
                         size_t max_points = 4000);

/// Opinion-evolution plot of a trace: one polyline per agent, plus the
/// influence values used per step when `include_influences` is set (the
/// dual plot for dynamic runs).
void write_trace_svg(std::ostream& out, const RunTrace& trace,
                     const InfluenceGraph& graph, const std::string& title,
                     bool include_influences);
void write_trace_svg_file(const std::string& path, const RunTrace& trace,
                          const InfluenceGraph& graph, const std::string& title,
                          bool include_influences);

}  // namespace otslab

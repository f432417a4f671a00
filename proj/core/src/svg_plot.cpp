#include "otslab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace otslab {

namespace {

constexpr double kWidth = 840.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
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

const char* kPalette[] = {"#1f77b4", "#d62728", "#e8b51f", "#2ca02c", "#9467bd",
                          "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22",
                          "#aec7e8", "#ff9896"};

}  // namespace

void write_line_plot_svg(std::ostream& out, const std::string& title,
                         const std::vector<PlotSeries>& series, size_t max_points) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double x) {
    return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  auto sy = [&](double y) {
    return kMarginTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << xml_escape(title)
      << "</text>\n";

  // axes with a few ticks
  out << "<g stroke=\"#333\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h
      << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
      << "\"/>\n";
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
      << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h << "\"/>\n";
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double xv = x_min + (x_max - x_min) * tick / 4.0;
    const double yv = y_min + (y_max - y_min) * tick / 4.0;
    out << "<text x=\"" << sx(xv) << "\" y=\"" << kMarginTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << sy(yv) + 4
        << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
  }
  out << "</g>\n";

  size_t color_index = 0;
  double legend_y = kMarginTop + 4;
  for (const auto& s : series) {
    const std::string color =
        s.color.empty() ? kPalette[color_index % (sizeof(kPalette) / sizeof(char*))]
                        : s.color;
    ++color_index;
    const size_t stride = s.points.size() > max_points
                              ? (s.points.size() + max_points - 1) / max_points
                              : 1;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.4\"";
    if (s.dashed) out << " stroke-dasharray=\"5,4\"";
    out << " points=\"";
    for (size_t i = 0; i < s.points.size(); i += stride) {
      out << fmt(sx(s.points[i].first)) << "," << fmt(sy(s.points[i].second)) << " ";
    }
    if (stride > 1 && !s.points.empty()) {
      out << fmt(sx(s.points.back().first)) << "," << fmt(sy(s.points.back().second));
    }
    out << "\"/>\n";
    out << "<text x=\"" << kMarginLeft + plot_w - 6 << "\" y=\"" << legend_y + 8
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
        << "fill=\"" << color << "\">" << xml_escape(s.name) << "</text>\n";
    legend_y += 14;
  }
  out << "</svg>\n";
}

void write_trace_svg(std::ostream& out, const RunTrace& trace,
                     const InfluenceGraph& graph, const std::string& title,
                     bool include_influences) {
  std::vector<PlotSeries> series;
  const size_t n = trace.initial.size();
  for (size_t i = 0; i < n; ++i) {
    PlotSeries s;
    s.name = "agent " + std::to_string(i + 1);
    s.points.reserve(trace.steps() + 1);
    s.points.emplace_back(0.0, trace.initial[i]);
    for (size_t t = 0; t < trace.steps(); ++t) {
      s.points.emplace_back(static_cast<double>(t + 1), trace.states[t][i]);
    }
    series.push_back(std::move(s));
  }
  if (include_influences) {
    // one dashed series per action label that carries state-dependent values
    std::vector<PlotSeries> by_edge(static_cast<size_t>(graph.edge_count()));
    for (size_t t = 0; t < trace.steps(); ++t) {
      by_edge[static_cast<size_t>(trace.actions[t])].points.emplace_back(
          static_cast<double>(t + 1), trace.influences[t]);
    }
    for (int e = 0; e < graph.edge_count(); ++e) {
      auto& s = by_edge[static_cast<size_t>(e)];
      if (s.points.empty()) continue;
      s.name = "influence " + graph.edge(e).label;
      s.dashed = true;
      series.push_back(std::move(s));
    }
  }
  write_line_plot_svg(out, title, series);
}

void write_trace_svg_file(const std::string& path, const RunTrace& trace,
                          const InfluenceGraph& graph, const std::string& title,
                          bool include_influences) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg file: " + path);
  write_trace_svg(out, trace, graph, title, include_influences);
  if (!out) throw std::runtime_error("failed while writing svg file: " + path);
}

}  // namespace otslab

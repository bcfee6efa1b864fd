#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clifft/algebra.hpp"
#include "clifft/field.hpp"
#include "clifft/io.hpp"

namespace clifft::svg {

struct Series {
  std::string label;
  std::vector<double> ys;
};

namespace detail {

inline std::string num2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string num_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

inline const char* palette(std::size_t k) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
  return colors[k % (sizeof(colors) / sizeof(colors[0]))];
}

}  // namespace detail

// Fixed-size line chart, one polyline per series. Output depends only on the inputs.
inline std::string render_line_plot(const std::string& title, const std::string& xlabel,
                                    const std::vector<double>& xs,
                                    const std::vector<Series>& series) {
  for (const Series& s : series) {
    if (s.ys.size() != xs.size()) {
      throw std::invalid_argument("render_line_plot: series length does not match x values");
    }
  }

  constexpr double kWidth = 860, kHeight = 520;
  constexpr double kLeft = 70, kRight = 700, kTop = 48, kBottom = 460;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (!xs.empty()) {
    xmin = *std::min_element(xs.begin(), xs.end());
    xmax = *std::max_element(xs.begin(), xs.end());
  }
  bool any = false;
  for (const Series& s : series) {
    for (double y : s.ys) {
      if (!std::isfinite(y)) continue;
      if (!any) {
        ymin = ymax = y;
        any = true;
      } else {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (!any) ymin = 0, ymax = 1;
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const auto px = [&](double x) {
    return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
  };
  const auto py = [&](double y) {
    return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop);
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         detail::num2(kWidth) + "\" height=\"" + detail::num2(kHeight) + "\" viewBox=\"0 0 " +
         detail::num2(kWidth) + " " + detail::num2(kHeight) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + detail::num2(kWidth) + "\" height=\"" +
         detail::num2(kHeight) + "\" fill=\"white\"/>\n";
  out += "<text x=\"" + detail::num2((kLeft + kRight) / 2) +
         "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">" +
         title + "</text>\n";

  // frame and ticks
  out += "<rect x=\"" + detail::num2(kLeft) + "\" y=\"" + detail::num2(kTop) + "\" width=\"" +
         detail::num2(kRight - kLeft) + "\" height=\"" + detail::num2(kBottom - kTop) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  constexpr int kTicks = 6;
  for (int t = 0; t < kTicks; ++t) {
    const double fx = xmin + (xmax - xmin) * t / (kTicks - 1);
    const double gx = px(fx);
    out += "<line x1=\"" + detail::num2(gx) + "\" y1=\"" + detail::num2(kBottom) + "\" x2=\"" +
           detail::num2(gx) + "\" y2=\"" + detail::num2(kBottom + 5) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + detail::num2(gx) + "\" y=\"" + detail::num2(kBottom + 20) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
           detail::num_label(fx) + "</text>\n";
    const double fy = ymin + (ymax - ymin) * t / (kTicks - 1);
    const double gy = py(fy);
    out += "<line x1=\"" + detail::num2(kLeft - 5) + "\" y1=\"" + detail::num2(gy) + "\" x2=\"" +
           detail::num2(kLeft) + "\" y2=\"" + detail::num2(gy) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + detail::num2(kLeft - 8) + "\" y=\"" + detail::num2(gy + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
           detail::num_label(fy) + "</text>\n";
  }
  out += "<text x=\"" + detail::num2((kLeft + kRight) / 2) + "\" y=\"" +
         detail::num2(kBottom + 40) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" + xlabel +
         "</text>\n";

  // zero line when visible
  if (ymin < 0 && ymax > 0) {
    out += "<line x1=\"" + detail::num2(kLeft) + "\" y1=\"" + detail::num2(py(0)) + "\" x2=\"" +
           detail::num2(kRight) + "\" y2=\"" + detail::num2(py(0)) +
           "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    std::string pts;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (!std::isfinite(series[k].ys[j])) continue;
      if (!pts.empty()) pts += ' ';
      pts += detail::num2(px(xs[j])) + "," + detail::num2(py(series[k].ys[j]));
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"";
    out += detail::palette(k);
    out += "\" stroke-width=\"1.5\"/>\n";
    const double ly = kTop + 16 + 18 * static_cast<double>(k);
    out += "<line x1=\"" + detail::num2(kRight + 12) + "\" y1=\"" + detail::num2(ly - 4) +
           "\" x2=\"" + detail::num2(kRight + 36) + "\" y2=\"" + detail::num2(ly - 4) +
           "\" stroke=\"";
    out += detail::palette(k);
    out += "\" stroke-width=\"1.5\"/>\n";
    out += "<text x=\"" + detail::num2(kRight + 42) + "\" y=\"" + detail::num2(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + series[k].label + "</text>\n";
  }

  out += "</svg>\n";
  return out;
}

// Slice along one axis; other axes are pinned to their middle node.
inline std::pair<std::vector<double>, std::vector<Series>> field_series(const SampledField& f,
                                                                        int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) {
    throw std::invalid_argument("field_series: axis out of range");
  }
  std::vector<int> idx(g.dim());
  for (int d = 0; d < g.dim(); ++d) idx[d] = g.extent(d) / 2;

  const std::vector<blade_t> blades = io::active_blades(f);
  std::vector<double> xs;
  std::vector<Series> series;
  for (blade_t b : blades) series.push_back({format_blade(b), {}});
  for (int k = 0; k < g.extent(axis); ++k) {
    idx[axis] = k;
    xs.push_back(g.coord(axis, k));
    std::size_t node = 0;
    for (int d = 0; d < g.dim(); ++d) {
      node += static_cast<std::size_t>(idx[d]) * g.stride(d);
    }
    for (std::size_t j = 0; j < blades.size(); ++j) {
      series[j].ys.push_back(f.at(node, blades[j]));
    }
  }
  return {std::move(xs), std::move(series)};
}

inline std::string plot_field(const SampledField& f, int axis, const std::string& title,
                              const std::string& xlabel) {
  auto [xs, series] = field_series(f, axis);
  return render_line_plot(title, xlabel, xs, series);
}

}  // namespace clifft::svg

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "scalelab/types.hpp"

// Minimal deterministic SVG renderer for the CLI's --plot flag. Plots are a
// convenience view of the CSV artifacts, never a data contract.
namespace svgplot {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f6fb2", "#d0653a", "#2a9d4e",
                                 "#8a4fb5", "#c23b80", "#666666"};
  return colors[i % 6];
}

namespace detail {

struct Frame {
  double x0, x1, y0, y1;
  static constexpr double left = 70, right = 830, top = 40, bottom = 550;
  double px(double x) const { return left + (x - x0) / (x1 - x0) * (right - left); }
  double py(double y) const { return bottom - (y - y0) / (y1 - y0) * (bottom - top); }
};

inline void pad_span(double& lo, double& hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  } else {
    double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
}

inline void axes(std::ofstream& out, const Frame& f, const std::string& title) {
  out << "<rect x='" << Frame::left << "' y='" << Frame::top << "' width='"
      << Frame::right - Frame::left << "' height='" << Frame::bottom - Frame::top
      << "' fill='none' stroke='#333'/>\n";
  out << "<text x='450' y='24' text-anchor='middle' font-size='16'>" << title << "</text>\n";
  for (int i = 0; i <= 5; ++i) {
    double fx = f.x0 + i * (f.x1 - f.x0) / 5, fy = f.y0 + i * (f.y1 - f.y0) / 5;
    double px = f.px(fx), py = f.py(fy);
    out << "<line x1='" << num(px) << "' y1='" << Frame::bottom << "' x2='" << num(px)
        << "' y2='" << Frame::bottom + 5 << "' stroke='#333'/>\n"
        << "<text x='" << num(px) << "' y='" << Frame::bottom + 20
        << "' text-anchor='middle' font-size='11'>" << num(fx) << "</text>\n"
        << "<line x1='" << Frame::left - 5 << "' y1='" << num(py) << "' x2='" << Frame::left
        << "' y2='" << num(py) << "' stroke='#333'/>\n"
        << "<text x='" << Frame::left - 8 << "' y='" << num(py + 4)
        << "' text-anchor='end' font-size='11'>" << num(fy) << "</text>\n";
  }
}

}  // namespace detail

inline void line_chart(const std::string& path, const std::string& title,
                       const std::vector<Series>& series) {
  std::ofstream out(path);
  if (!out) throw scalelab::ConfigError("cannot write " + path);
  detail::Frame f{0, 1, 0, 1};
  bool any = false;
  for (const Series& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!any) {
        f.x0 = f.x1 = s.x[i];
        f.y0 = f.y1 = s.y[i];
        any = true;
      }
      f.x0 = std::min(f.x0, s.x[i]);
      f.x1 = std::max(f.x1, s.x[i]);
      f.y0 = std::min(f.y0, s.y[i]);
      f.y1 = std::max(f.y1, s.y[i]);
    }
  detail::pad_span(f.x0, f.x1);
  detail::pad_span(f.y0, f.y1);

  out << "<svg xmlns='http://www.w3.org/2000/svg' width='860' height='600' "
         "font-family='sans-serif'>\n<rect width='860' height='600' fill='white'/>\n";
  detail::axes(out, f, title);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    out << "<polyline fill='none' stroke='" << palette(k) << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i])) << ' ';
    }
    out << "'/>\n";
    if (!s.label.empty())
      out << "<rect x='700' y='" << 50 + 18 * k << "' width='12' height='12' fill='"
          << palette(k) << "'/><text x='718' y='" << 61 + 18 * k << "' font-size='12'>"
          << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

// category per cell, row-major over (xs, ys): 0 red, 1 green, 2 gray
inline void grid_chart(const std::string& path, const std::string& title,
                       const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::vector<int>& category) {
  std::ofstream out(path);
  if (!out) throw scalelab::ConfigError("cannot write " + path);
  detail::Frame f{xs.front(), xs.back(), ys.front(), ys.back()};
  detail::pad_span(f.x0, f.x1);
  detail::pad_span(f.y0, f.y1);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='860' height='600' "
         "font-family='sans-serif'>\n<rect width='860' height='600' fill='white'/>\n";
  double w = (detail::Frame::right - detail::Frame::left) / static_cast<double>(xs.size());
  double h = (detail::Frame::bottom - detail::Frame::top) / static_cast<double>(ys.size());
  static const char* fill[] = {"#d03030", "#2a9d4e", "#999999"};
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      int c = category[i * ys.size() + j];
      out << "<rect x='" << num(f.px(xs[i]) - w / 2) << "' y='" << num(f.py(ys[j]) - h / 2)
          << "' width='" << num(w + 0.5) << "' height='" << num(h + 0.5) << "' fill='"
          << fill[c % 3] << "'/>\n";
    }
  detail::axes(out, f, title);
  out << "</svg>\n";
}

}  // namespace svgplot

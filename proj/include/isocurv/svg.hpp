#pragma once

// Minimal SVG scatter plot: axes as polylines, points as circles.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace isocurv {

struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 640;
  int height = 480;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string svg_scatter(const std::vector<std::pair<double, double>>& pts, const SvgPlot& plot = {}) {
  const double m = 60.0, W = plot.width, H = plot.height;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& [x, y] : pts) {
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    x0 = std::min(x0, x), x1 = std::max(x1, x);
    y0 = std::min(y0, y), y1 = std::max(y1, y);
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 <= 0) x1 = x0 + 1;
  if (y1 - y0 <= 0) y1 = y0 + 1;
  auto px = [&](double x) { return m + (x - x0) / (x1 - x0) * (W - 2 * m); };
  auto py = [&](double y) { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); };
  using detail::fmt;
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<polyline fill=\"none\" stroke=\"black\" points=\"" + fmt(m) + "," + fmt(m) + " " + fmt(m) + "," + fmt(H - m) +
       " " + fmt(W - m) + "," + fmt(H - m) + "\"/>\n";
  if (y0 < 0 && y1 > 0)
    s += "<polyline fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4\" points=\"" + fmt(m) + "," + fmt(py(0)) + " " +
         fmt(W - m) + "," + fmt(py(0)) + "\"/>\n";
  for (const auto& [x, y] : pts) {
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    s += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"2\" fill=\"" + (y < 0 ? "red" : "steelblue") +
         "\"/>\n";
  }
  auto text = [&](double x, double y, const std::string& t, const char* anchor) {
    s += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-size=\"12\" text-anchor=\"" + anchor + "\">" +
         detail::escape_xml(t) + "</text>\n";
  };
  text(W / 2, m / 2, plot.title, "middle");
  text(W / 2, H - m / 4, plot.x_label, "middle");
  text(m / 4, H / 2, plot.y_label, "start");
  text(m, H - m + 16, fmt(x0), "start");
  text(W - m, H - m + 16, fmt(x1), "end");
  text(m - 4, H - m, fmt(y0), "end");
  text(m - 4, m + 4, fmt(y1), "end");
  s += "</svg>\n";
  return s;
}

}  // namespace isocurv

// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal SVG line plots for the experiment panels. CSVs stay the source of
// truth; these are convenience renderings.

#ifndef SUBMAX_SVG_HPP_
#define SUBMAX_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "submax/io.hpp"

namespace submax {

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y), x ascending
};

namespace detail {

inline std::string svg_round(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

// One panel: series as polylines over a linear x axis; the y axis is linear
// or log10 per the caller.
inline void write_line_plot_svg(const std::string& path,
                                const std::string& title,
                                const std::string& x_label,
                                const std::string& y_label,
                                const std::vector<SvgSeries>& series,
                                bool log_y) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
  const double width = 640, height = 420;
  const double left = 70, right = 620, top = 40, bottom = 370;

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      const double yy = log_y ? std::log10(std::max(y, 1e-12)) : y;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, yy);
      y_max = std::max(y_max, yy);
    }
  }
  if (x_min > x_max) {
    x_min = 0;
    x_max = 1;
    y_min = 0;
    y_max = 1;
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const auto sx = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * (right - left);
  };
  const auto sy = [&](double y) {
    const double yy = log_y ? std::log10(std::max(y, 1e-12)) : y;
    return bottom - (yy - y_min) / (y_max - y_min) * (bottom - top);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         detail::svg_round(width) + "\" height=\"" + detail::svg_round(height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" +
         title + "</text>\n";
  out += "<text x=\"320\" y=\"405\" text-anchor=\"middle\">" + x_label +
         "</text>\n";
  out += "<text x=\"16\" y=\"205\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 205)\">" +
         y_label + (log_y ? " (log scale)" : "") + "</text>\n";
  out += "<line x1=\"70\" y1=\"370\" x2=\"620\" y2=\"370\" stroke=\"black\"/>\n";
  out += "<line x1=\"70\" y1=\"40\" x2=\"70\" y2=\"370\" stroke=\"black\"/>\n";

  for (int tick = 0; tick <= 4; ++tick) {
    const double fx = x_min + (x_max - x_min) * tick / 4.0;
    const double fy = y_min + (y_max - y_min) * tick / 4.0;
    out += "<line x1=\"" + detail::svg_round(sx(fx)) +
           "\" y1=\"370\" x2=\"" + detail::svg_round(sx(fx)) +
           "\" y2=\"374\" stroke=\"black\"/>\n";
    out += "<text x=\"" + detail::svg_round(sx(fx)) +
           "\" y=\"388\" text-anchor=\"middle\">" + format_double(fx) +
           "</text>\n";
    const double shown = log_y ? std::pow(10.0, fy) : fy;
    const double py = bottom - (fy - y_min) / (y_max - y_min) * (bottom - top);
    out += "<line x1=\"66\" y1=\"" + detail::svg_round(py) +
           "\" x2=\"70\" y2=\"" + detail::svg_round(py) +
           "\" stroke=\"black\"/>\n";
    char label[32];
    std::snprintf(label, sizeof(label), "%.3g", shown);
    out += "<text x=\"62\" y=\"" + detail::svg_round(py + 4) +
           "\" text-anchor=\"end\">" + label + "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 8];
    if (series[s].points.size() == 1) {
      const auto& [x, y] = series[s].points.front();
      out += "<circle cx=\"" + detail::svg_round(sx(x)) + "\" cy=\"" +
             detail::svg_round(sy(y)) + "\" r=\"3\" fill=\"" + color +
             "\"/>\n";
    } else if (!series[s].points.empty()) {
      out += "<polyline fill=\"none\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : series[s].points) {
        out += detail::svg_round(sx(x)) + "," + detail::svg_round(sy(y)) + " ";
      }
      out += "\"/>\n";
    }
    const double ly = 50.0 + 16.0 * static_cast<double>(s);
    out += "<line x1=\"480\" y1=\"" + detail::svg_round(ly - 4) +
           "\" x2=\"500\" y2=\"" + detail::svg_round(ly - 4) + "\" stroke=\"" +
           color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"505\" y=\"" + detail::svg_round(ly) + "\">" +
           series[s].label + "</text>\n";
  }
  out += "</svg>\n";
  write_text(path, out);
}

}  // namespace submax

#endif  // SUBMAX_SVG_HPP_

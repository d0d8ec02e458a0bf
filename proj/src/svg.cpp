/*
 * Copyright 2026 The ttorus Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ttorus/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ttorus {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo, hi;
  bool log;
  double map(double v, double p0, double p1) const {
    const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
    return p0 + t * (p1 - p0);
  }
};

Axis make_axis(const std::vector<PlotSeries>& series, bool use_x, bool log) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : series)
    for (double v : use_x ? s.x : s.y) {
      if (log && !(v > 0.0)) continue;
      const double t = log ? std::log10(v) : v;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad, log};
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  const Axis ax = make_axis(spec.series, true, spec.log_x);
  const Axis ay = make_axis(spec.series, false, spec.log_y);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(spec.title) << "</text>\n";
  os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
     << y0 - y1 << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double tx = ax.lo + (ax.hi - ax.lo) * i / 4.0;
    const double ty = ay.lo + (ay.hi - ay.lo) * i / 4.0;
    const double px = x0 + (x1 - x0) * i / 4.0;
    const double py = y0 + (y1 - y0) * i / 4.0;
    os << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px << "\" y2=\"" << y0 + 5
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">"
       << fmt(ax.log ? std::pow(10.0, tx) : tx) << "</text>\n";
    os << "<line x1=\"" << x0 - 5 << "\" y1=\"" << py << "\" x2=\"" << x0 << "\" y2=\"" << py
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << x0 - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">"
       << fmt(ay.log ? std::pow(10.0, ty) : ty) << "</text>\n";
  }
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  os << "<text x=\"15\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
     << (y0 + y1) / 2 << ")\">" << escape(spec.y_label) << "</text>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const auto& series = spec.series[s];
    if (series.x.size() != series.y.size())
      throw std::invalid_argument("render_svg: x and y lengths differ");
    const char* color = kColors[s % std::size(kColors)];
    std::ostringstream pts;
    for (std::size_t i = 0; i < series.x.size(); ++i) {
      if ((spec.log_x && !(series.x[i] > 0)) || (spec.log_y && !(series.y[i] > 0))) continue;
      const double px = ax.map(series.x[i], x0, x1), py = ay.map(series.y[i], y0, y1);
      if (series.markers) {
        os << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py) << "\" r=\"2\" fill=\"" << color
           << "\"/>\n";
      } else {
        pts << fmt(px) << "," << fmt(py) << " ";
      }
    }
    if (!series.markers)
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
         << pts.str() << "\"/>\n";
    os << "<text x=\"" << x1 - 10 << "\" y=\"" << y1 + 16 + 14 * s
       << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape(series.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ttorus

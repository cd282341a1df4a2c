// Copyright 2026 The stagegen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stagegen/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace stagegen::svg {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 180;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
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

std::string num(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

struct Frame {
  std::ostringstream out;
  double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;

  Frame(const std::string& title, const std::string& x_label, const std::string& y_label) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n"
        << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 15
        << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n"
        << "<text transform=\"translate(18," << (y0 + y1) / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
  }

  void legend(std::size_t i, const std::string& name, const char* color) {
    const double y = kTop + 10 + 18 * static_cast<double>(i);
    out << "<rect x=\"" << x1 + 15 << "\" y=\"" << y - 9 << "\" width=\"12\" height=\"12\" fill=\""
        << color << "\"/>\n<text x=\"" << x1 + 32 << "\" y=\"" << y + 1 << "\">" << escape(name)
        << "</text>\n";
  }

  std::string finish() {
    out << "</svg>\n";
    return out.str();
  }
};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool empty() const { return lo > hi; }
  void pad() {
    if (empty()) {
      lo = 0;
      hi = 1;
    } else if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series) {
  Frame f(title, x_label + " (log)", y_label + " (log)");
  Range xr, yr;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (x > 0 && y > 0) {
        xr.add(std::log10(x));
        yr.add(std::log10(y));
      }
    }
  }
  xr.pad();
  yr.lo = std::floor(yr.lo);
  yr.hi = std::ceil(yr.hi);
  yr.pad();
  auto px = [&](double x) { return f.x0 + (std::log10(x) - xr.lo) / (xr.hi - xr.lo) * (f.x1 - f.x0); };
  auto py = [&](double y) { return f.y0 - (std::log10(y) - yr.lo) / (yr.hi - yr.lo) * (f.y0 - f.y1); };
  for (double d = std::ceil(xr.lo); d <= xr.hi; ++d) {
    const double x = px(std::pow(10, d));
    f.out << "<text x=\"" << x << "\" y=\"" << f.y0 + 18 << "\" text-anchor=\"middle\">1e"
          << num(d) << "</text>\n";
  }
  for (double d = yr.lo; d <= yr.hi; ++d) {
    const double y = py(std::pow(10, d));
    f.out << "<line x1=\"" << f.x0 << "\" y1=\"" << y << "\" x2=\"" << f.x1 << "\" y2=\"" << y
          << "\" stroke=\"#ddd\"/>\n<text x=\"" << f.x0 - 6 << "\" y=\"" << y + 4
          << "\" text-anchor=\"end\">1e" << num(d) << "</text>\n";
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    std::string path;
    for (const auto& [x, y] : series[i].points) {
      if (!(x > 0 && y > 0)) continue;
      path += (path.empty() ? "" : " ") + num(px(x)) + "," + num(py(y));
      f.out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color
            << "\"/>\n";
    }
    f.out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
          << path << "\"/>\n";
    f.legend(i, series[i].name, color);
  }
  return f.finish();
}

std::string bar_chart(const std::string& title, const std::string& y_label,
                      const std::vector<std::string>& groups, const std::vector<Bar>& bars) {
  Frame f(title, "", y_label);
  double top = 1;
  for (const auto& b : bars) {
    for (const double v : b.values) {
      if (std::isfinite(v)) top = std::max(top, v);
    }
  }
  top *= 1.1;
  auto py = [&](double v) { return f.y0 - v / top * (f.y0 - f.y1); };
  for (int i = 0; i <= 5; ++i) {
    const double v = top * i / 5;
    f.out << "<text x=\"" << f.x0 - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\">"
          << num(v) << "</text>\n";
  }
  const double slot = (f.x1 - f.x0) / static_cast<double>(std::max<std::size_t>(groups.size(), 1));
  const double width = slot * 0.8 / static_cast<double>(std::max<std::size_t>(bars.size(), 1));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double gx = f.x0 + slot * static_cast<double>(g) + slot * 0.1;
    for (std::size_t b = 0; b < bars.size(); ++b) {
      if (g >= bars[b].values.size() || !std::isfinite(bars[b].values[g])) continue;
      const double v = bars[b].values[g];
      f.out << "<rect x=\"" << gx + width * static_cast<double>(b) << "\" y=\"" << py(v)
            << "\" width=\"" << width << "\" height=\"" << f.y0 - py(v) << "\" fill=\""
            << kPalette[b % std::size(kPalette)] << "\"><title>" << escape(groups[g]) << " "
            << escape(bars[b].label) << ": " << num(v) << "</title></rect>\n";
    }
    f.out << "<text transform=\"translate(" << gx + slot * 0.4 << "," << f.y0 + 12
          << ") rotate(30)\" font-size=\"9\">" << escape(groups[g]) << "</text>\n";
  }
  f.out << "<line x1=\"" << f.x0 << "\" y1=\"" << py(1) << "\" x2=\"" << f.x1 << "\" y2=\""
        << py(1) << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  for (std::size_t b = 0; b < bars.size(); ++b) {
    f.legend(b, bars[b].label, kPalette[b % std::size(kPalette)]);
  }
  return f.finish();
}

std::string scatter(const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<Point>& points) {
  Frame f(title, x_label, y_label);
  Range xr, yr;
  xr.add(0);
  yr.add(0);
  for (const auto& p : points) {
    xr.add(p.x);
    yr.add(p.y);
  }
  xr.hi *= 1.1;
  yr.hi *= 1.1;
  xr.pad();
  yr.pad();
  auto px = [&](double x) { return f.x0 + (x - xr.lo) / (xr.hi - xr.lo) * (f.x1 - f.x0); };
  auto py = [&](double y) { return f.y0 - (y - yr.lo) / (yr.hi - yr.lo) * (f.y0 - f.y1); };
  for (int i = 0; i <= 5; ++i) {
    const double x = xr.lo + (xr.hi - xr.lo) * i / 5;
    const double y = yr.lo + (yr.hi - yr.lo) * i / 5;
    f.out << "<text x=\"" << px(x) << "\" y=\"" << f.y0 + 18 << "\" text-anchor=\"middle\">"
          << num(x) << "</text>\n<text x=\"" << f.x0 - 6 << "\" y=\"" << py(y) + 4
          << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    f.out << "<circle cx=\"" << px(points[i].x) << "\" cy=\"" << py(points[i].y)
          << "\" r=\"5\" fill=\"" << color << "\"/>\n";
    f.legend(i, points[i].label, color);
  }
  return f.finish();
}

}  // namespace stagegen::svg

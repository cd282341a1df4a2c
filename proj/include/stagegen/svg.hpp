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

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace stagegen::svg {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

// Log-log line chart; non-positive points are skipped.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series);

struct Bar {
  std::string label;
  std::vector<double> values;  // one per group; NaN leaves a gap
};

// Grouped bars on a linear axis with a reference line at 1.
std::string bar_chart(const std::string& title, const std::string& y_label,
                      const std::vector<std::string>& groups, const std::vector<Bar>& bars);

struct Point {
  std::string label;
  double x = 0;
  double y = 0;
};

std::string scatter(const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<Point>& points);

}  // namespace stagegen::svg

// Copyright 2026 The spline2relu Authors
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


// Text reports and minimal SVG plots.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "spline2relu/compiler.hpp"

namespace spline2relu {

/// key=value lines: width, depth, params, bound, within_budget, max_error,
/// regime and (when present) note.
[[nodiscard]] std::string format_compile_report(const CompileReport& r,
                                                double max_error);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Log-log line plot. Non-positive points are skipped.
[[nodiscard]] std::string loglog_svg(std::span<const PlotSeries> series,
                                     const std::string& title,
                                     const std::string& xlabel,
                                     const std::string& ylabel);

}  // namespace spline2relu

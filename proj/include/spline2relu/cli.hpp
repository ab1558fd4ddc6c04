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


// Batch driver behind the spline2relu command-line tool.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace spline2relu {

enum class Command { kCompile, kVerify, kEval, kRates, kRiesz, kTakagi, kFourier };

enum class RateFamily {
  kTakagi,  // dyadic Takagi partial sums, W = 4
  kSquare,  // x(1 - x) through 4^-k coefficients, W = 4
  kLip,     // |x - 1/2|^alpha through the Lip-alpha approximant
};

struct RunConfig {
  Command command = Command::kCompile;
  std::filesystem::path input;      // spline (compile) or network file
  std::filesystem::path reference;  // spline file for verify
  std::filesystem::path out;        // network, CSV or table output
  std::filesystem::path svg;        // optional plot for rates
  std::size_t width = 8;
  std::size_t grid_n = 4097;
  std::uint64_t seed = 42;

  // verify
  double tolerance = 1e-9;
  // eval
  std::vector<double> points;
  // rates
  RateFamily family = RateFamily::kTakagi;
  std::vector<int> ms;
  double alpha = 1.0;
  double ar_exponent = 1.0;
  bool timing = false;
  unsigned threads = 0;
  // riesz
  int frame_k = 32;
  int gap_k = 64;
  std::size_t lemsum_samples = 100;
  // takagi
  int order = 10;
  bool square = false;
  // fourier: "j:a:b" items
  std::vector<std::string> terms;
};

/// Runs one command. Returns 0 on success, 1 on a failed check (budget,
/// tolerance) and 2 on errors; diagnostics go to `err` as one line.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace spline2relu

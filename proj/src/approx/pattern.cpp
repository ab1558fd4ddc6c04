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


#include <cmath>
#include <string>

#include "spline2relu/approx.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

constexpr double kEndpointTol = 1e-9;
constexpr double kLipSlack = 1e-9;

}  // namespace

bool Pattern::valid() const {
  if (levels.size() < 2 || levels.front() != 0 || levels.back() != 0) return false;
  for (std::size_t j = 1; j < levels.size(); ++j) {
    if (std::abs(levels[j] - levels[j - 1]) > 1) return false;
  }
  return true;
}

bool Pattern::is_zero() const {
  for (int v : levels) {
    if (v != 0) return false;
  }
  return true;
}

Cpwl Pattern::to_cpwl(double scale) const {
  const std::size_t n = k();
  if (n == 0) throw ArgumentError("empty pattern");
  std::vector<double> xs(n + 1), vs(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    xs[j] = j == n ? 1.0 : static_cast<double>(j) / static_cast<double>(n);
    vs[j] = scale * levels[j];
  }
  return Cpwl(std::move(xs), std::move(vs));
}

Pattern quantize_pattern(const std::function<double(double)>& g, int k,
                         double alpha) {
  if (k < 2) throw ArgumentError("quantize_pattern needs k >= 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ArgumentError("alpha must lie in (0, 1]");
  }
  const double h = 1.0 / k;
  const double unit = std::pow(h, alpha);
  std::vector<double> gv(k + 1);
  for (int j = 0; j <= k; ++j) gv[j] = g(j == k ? 1.0 : j * h);
  if (std::fabs(gv[0]) > kEndpointTol || std::fabs(gv[k]) > kEndpointTol) {
    throw ContractError("g must vanish at 0 and 1");
  }
  for (int j = 1; j <= k; ++j) {
    if (std::fabs(gv[j] - gv[j - 1]) > unit * (1.0 + kLipSlack)) {
      throw ContractError("Lipschitz bound violated between nodes " +
                          std::to_string(j - 1) + " and " + std::to_string(j));
    }
  }

  Pattern p;
  p.levels.assign(k + 1, 0);
  for (int j = 1; j < k; ++j) {
    const double y = gv[j] / unit;
    const double lo = std::floor(y);
    const double frac = y - lo;
    const int prev = p.levels[j - 1];
    int beta;
    if (frac < 0.5) {
      beta = static_cast<int>(lo);
    } else if (frac > 0.5) {
      beta = static_cast<int>(lo) + 1;
    } else {
      beta = prev <= lo ? static_cast<int>(lo) : static_cast<int>(lo) + 1;
    }
    // Within the slack of the contract a step of two can only come from
    // rounding; the neighbouring level is then equally close.
    if (beta > prev + 1) beta = prev + 1;
    if (beta < prev - 1) beta = prev - 1;
    p.levels[j] = beta;
  }
  if (std::abs(p.levels[k - 1]) > 1) {
    throw ContractError("pattern cannot return to zero at x = 1");
  }
  return p;
}

int pattern_resolution(int m) {
  int best = 0;
  double pow3 = 3.0;
  for (int k = 1; pow3 * k <= m; ++k, pow3 *= 3.0) best = k;
  return best;
}

}  // namespace spline2relu

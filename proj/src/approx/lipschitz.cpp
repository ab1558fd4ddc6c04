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


#include <chrono>
#include <cmath>
#include <map>
#include <string>

#include "spline2relu/approx.hpp"
#include "spline2relu/combinators.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {

LipApproximation lip_alpha_approximant(const TargetFunction& f, double alpha,
                                       int m, std::size_t width,
                                       std::size_t grid_n) {
  if (width < 8) {
    throw ArgumentError("Lip-alpha approximant needs W >= 8, got " +
                        std::to_string(width));
  }
  if (m < 2) throw ArgumentError("Lip-alpha approximant needs m >= 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ArgumentError("alpha must lie in (0, 1]");
  }
  const auto start = std::chrono::steady_clock::now();
  const double seminorm = f.lip ? f.lip->seminorm : 1.0;
  if (!(seminorm > 0.0)) throw ArgumentError("Lipschitz seminorm must be positive");

  std::vector<double> xs(m + 1), fv(m + 1);
  for (int i = 0; i <= m; ++i) {
    xs[i] = i == m ? 1.0 : static_cast<double>(i) / m;
    fv[i] = f(xs[i]);
  }
  const Cpwl t(xs, fv);
  SpecialNetwork net = compile_spline(t, width).net;

  const int k = pattern_resolution(m);
  const double ma = std::pow(static_cast<double>(m), alpha);
  std::size_t distinct = 0;
  if (k >= 2) {
    // Intervals grouped by the pattern of their rescaled residual.
    std::map<Pattern, std::vector<Interval>> groups;
    for (int i = 0; i < m; ++i) {
      const double f0 = fv[i];
      const double df = fv[i + 1] - fv[i];
      auto g = [&](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 0.0;
        const double y = (x + i) / m;
        return 0.5 * ma * (f(y) - (f0 + df * x)) / seminorm;
      };
      Pattern p = quantize_pattern(g, k, alpha);
      if (p.is_zero()) continue;
      groups[std::move(p)].push_back({xs[i], xs[i + 1]});
    }
    distinct = groups.size();
    const double scale =
        2.0 * seminorm / ma * std::pow(1.0 / static_cast<double>(k), alpha);
    for (const auto& [pattern, intervals] : groups) {
      net = concat_sum(net,
                       compile_self_similar(pattern.to_cpwl(scale), intervals, width).net);
    }
  }

  LipApproximation out{std::move(net), {}, k, 0.0, distinct};
  out.bound = 4.0 * seminorm *
              std::pow(static_cast<double>(std::max(k, 1)) * m, -alpha);
  out.record.m = m;
  out.record.params = out.net.param_count();
  out.record.sup_error = measure_sigma(f, AnyNetwork(out.net), grid_n);
  out.record.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return out;
}

}  // namespace spline2relu

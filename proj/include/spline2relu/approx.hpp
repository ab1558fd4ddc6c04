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

// Approximation procedures and rate experiments.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spline2relu/cpwl.hpp"
#include "spline2relu/network.hpp"

namespace spline2relu {

struct LipBound {
  double alpha = 1.0;
  double seminorm = 1.0;
};

struct TargetFunction {
  std::function<double(double)> eval;
  std::optional<LipBound> lip;
  std::string name;

  double operator()(double x) const { return eval(x); }
};

/// Integer levels m_0..m_k with m_0 = m_k = 0 and unit steps.
struct Pattern {
  std::vector<int> levels;

  [[nodiscard]] std::size_t k() const { return levels.empty() ? 0 : levels.size() - 1; }
  [[nodiscard]] bool valid() const;
  /// CPwL with nodes j/k and values levels[j] * scale.
  [[nodiscard]] Cpwl to_cpwl(double scale) const;
  [[nodiscard]] bool is_zero() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern&, const Pattern&) = default;
};

/// Levels beta_j with beta_j h^alpha the multiple of h^alpha (h = 1/k)
/// closest to g(j/k), ties going to beta_{j-1}. Requires g(0) = g(1) = 0
/// and |g|_{Lip alpha} <= 1 at the nodes; throws ContractError otherwise.
[[nodiscard]] Pattern quantize_pattern(const std::function<double(double)>& g,
                                       int k, double alpha);

/// Largest k with 3^k k <= m (0 when even k = 1 does not fit).
[[nodiscard]] int pattern_resolution(int m);

struct ExperimentRecord {
  int m = 0;
  std::size_t params = 0;
  double sup_error = 0.0;
  double wall_ms = 0.0;
  /// Non-empty when the builder failed for this m.
  std::string error;
};

struct LipApproximation {
  SpecialNetwork net;
  ExperimentRecord record;
  int k = 0;
  /// 4 |f|_{Lip alpha} (k m)^-alpha with k replaced by 1 in the fallback.
  double bound = 0.0;
  std::size_t distinct_patterns = 0;
};

/// Interpolant at i/m plus self-similar corrections for every distinct
/// residual pattern. Requires W >= 8, m >= 2, 0 < alpha <= 1.
[[nodiscard]] LipApproximation lip_alpha_approximant(const TargetFunction& f,
                                                     double alpha, int m,
                                                     std::size_t width,
                                                     std::size_t grid_n = 4097);

struct SobolevSplit {
  TargetFunction f0;
  TargetFunction f1;
  double lambda = 0.0;
  double lp_norm = 0.0;       // ||f'||_p
  double l1_f1prime = 0.0;    // ||f1'||_1
  double linf_f0prime = 0.0;  // ||f0'||_inf
  /// (||f1'||_1 + t ||f0'||_inf) / (||f'||_p t^(1 - 1/p)).
  double realized_constant = 0.0;
};

inline constexpr int kQuadraturePanels = 1024;

/// Truncates f' at lambda = t^(-1/p) ||f'||_p. Norms and antiderivatives
/// use the composite midpoint rule with kQuadraturePanels panels.
[[nodiscard]] SobolevSplit sobolev_split(std::function<double(double)> fprime,
                                         double p, double t,
                                         double f_at_zero = 0.0);

/// f(0) + integral of fprime over [0, x] by the same quadrature.
[[nodiscard]] double integrate_derivative(
    const std::function<double(double)>& fprime, double x, double f_at_zero = 0.0);

/// max |f - net| over a uniform grid of grid_n points plus every
/// breakpoint of the network's function.
[[nodiscard]] double measure_sigma(const TargetFunction& f, const AnyNetwork& net,
                                   std::size_t grid_n);

using NetworkBuilder = std::function<AnyNetwork(int m)>;

/// One record per m, in input order. Builder failures are recorded in the
/// row. threads = 0 uses SPLINE2RELU_THREADS or the hardware count;
/// wall_ms stays 0 unless `timing` is set.
[[nodiscard]] std::vector<ExperimentRecord> rate_experiment(
    const TargetFunction& f, const NetworkBuilder& builder,
    std::span<const int> ms, std::size_t grid_n, unsigned threads = 0,
    bool timing = false);

/// sup_m (m + 1)^r error_m over the successful rows.
[[nodiscard]] double empirical_ar_seminorm(std::span<const ExperimentRecord> rows,
                                           double r);

/// Least-squares slope of log y against log x.
[[nodiscard]] double loglog_slope(std::span<const double> x,
                                  std::span<const double> y);

/// Header "m,params,sup_error,wall_ms" plus one line per record.
[[nodiscard]] std::string records_to_csv(std::span<const ExperimentRecord> rows);

/// Worker count from SPLINE2RELU_THREADS, else the hardware count (>= 1).
[[nodiscard]] unsigned default_threads();

}  // namespace spline2relu

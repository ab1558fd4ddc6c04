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


#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "spline2relu/approx.hpp"
#include "spline2relu/combinators.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

// Dense-grid sup |g - S| for the pattern's CPwL at scale k^-alpha.
double pattern_error(const std::function<double(double)>& g, const Pattern& p,
                     double alpha) {
  const Cpwl s = p.to_cpwl(std::pow(1.0 / static_cast<double>(p.k()), alpha));
  return oracle::grid_diff(g, [&](double x) { return s(x); }, 10000);
}

TEST(QuantizePattern, ZeroFunctionGivesZeroPattern) {
  const Pattern p = quantize_pattern([](double) { return 0.0; }, 6, 0.5);
  EXPECT_TRUE(p.valid());
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.k(), 6u);
}

TEST(QuantizePattern, TentWithinCoveringRadius) {
  for (double alpha : {0.5, 1.0}) {
    auto g = [alpha](double x) { return std::pow(std::min(x, 1.0 - x), alpha); };
    const Pattern p = quantize_pattern(g, 8, alpha);
    EXPECT_TRUE(p.valid());
    EXPECT_LE(pattern_error(g, p, alpha), 2.0 * std::pow(8.0, -alpha));
  }
}

TEST(QuantizePattern, RandomSamplesRespectInvariantsAndCount) {
  oracle::Rng rng(61);
  for (double alpha : {0.5, 1.0}) {
    std::set<Pattern> seen;
    for (int i = 0; i < 500; ++i) {
      const auto g = oracle::random_k_alpha(rng, alpha);
      const Pattern p = quantize_pattern(g, 5, alpha);
      ASSERT_TRUE(p.valid());
      EXPECT_LE(pattern_error(g, p, alpha), 2.0 * std::pow(5.0, -alpha));
      seen.insert(p);
    }
    EXPECT_LE(seen.size(), 243u);
  }
}

TEST(QuantizePattern, TiesGoTowardPreviousLevel) {
  // g(1/2) sits halfway between levels 0 and 1 at k = 4, alpha = 1.
  auto g = [](double x) { return x == 0.5 ? 0.125 : 0.0; };
  const Pattern p = quantize_pattern(g, 4, 1.0);
  EXPECT_EQ(p.levels, (std::vector<int>{0, 0, 0, 0, 0}));
}

TEST(QuantizePattern, ContractViolations) {
  EXPECT_THROW((void)quantize_pattern([](double x) { return x; }, 4, 1.0), ContractError);
  EXPECT_THROW((void)quantize_pattern([](double x) { return 3.0 * std::min(x, 1.0 - x); }, 4, 1.0),
               ContractError);
  EXPECT_THROW((void)quantize_pattern([](double) { return 0.0; }, 1, 1.0), ArgumentError);
  EXPECT_THROW((void)quantize_pattern([](double) { return 0.0; }, 4, 1.5), ArgumentError);
}

TEST(PatternResolution, LargestFittingK) {
  EXPECT_EQ(pattern_resolution(2), 0);
  EXPECT_EQ(pattern_resolution(3), 1);
  EXPECT_EQ(pattern_resolution(18), 2);
  EXPECT_EQ(pattern_resolution(80), 2);
  EXPECT_EQ(pattern_resolution(81), 3);
  EXPECT_EQ(pattern_resolution(100), 3);
  EXPECT_EQ(pattern_resolution(324), 4);
}

TEST(LipApproximant, LinearTargetIsExact) {
  TargetFunction f{[](double x) { return 0.3 * x - 0.1; }, LipBound{1.0, 0.3}, "linear"};
  const LipApproximation a = lip_alpha_approximant(f, 1.0, 20, 8);
  EXPECT_EQ(a.distinct_patterns, 0u);
  EXPECT_LE(a.record.sup_error, 1e-15);
}

TEST(LipApproximant, SquareRootCuspWithinBound) {
  TargetFunction f{[](double x) { return std::sqrt(std::fabs(x - 0.5)); }, LipBound{0.5, std::sqrt(2.0)},
                   "cusp"};
  const LipApproximation a = lip_alpha_approximant(f, 0.5, 100, 8);
  EXPECT_EQ(a.k, 3);
  EXPECT_DOUBLE_EQ(a.bound, 4.0 * std::sqrt(2.0) / std::sqrt(300.0));
  EXPECT_LE(a.record.sup_error, a.bound);
  EXPECT_LE(a.distinct_patterns, 27u);
  EXPECT_EQ(a.record.params, a.net.param_count());
}

TEST(LipApproximant, GridScaleOscillationUsesPatterns) {
  // Residual on every interval is a tent of height 1/(2m); at k = 4 the
  // middle node quantizes to level 1. The quarter nodes sit on rounding
  // ties, so floating-point noise may split the intervals into a few groups.
  TargetFunction f{[](double x) {
                     const double y = 400.0 * x;
                     return std::fabs(y - std::round(y)) / 400.0;
                   },
                   LipBound{1.0, 1.0}, "tooth"};
  const LipApproximation a = lip_alpha_approximant(f, 1.0, 400, 8);
  EXPECT_EQ(a.k, 4);
  EXPECT_GE(a.distinct_patterns, 1u);
  EXPECT_LE(a.distinct_patterns, 81u);
  EXPECT_LE(a.record.sup_error, a.bound);
  EXPECT_LT(a.record.sup_error, 1.0 / 800.0);
}

TEST(LipApproximant, FallsBackToInterpolation) {
  TargetFunction f{[](double x) { return std::fabs(x - 0.3); }, LipBound{1.0, 1.0}, "abs"};
  const LipApproximation a = lip_alpha_approximant(f, 1.0, 5, 8);
  EXPECT_EQ(a.k, 1);
  EXPECT_EQ(a.distinct_patterns, 0u);
  EXPECT_LE(a.record.sup_error, a.bound);
  EXPECT_THROW((void)lip_alpha_approximant(f, 1.0, 1, 8), ArgumentError);
  EXPECT_THROW((void)lip_alpha_approximant(f, 1.0, 10, 7), ArgumentError);
}

TEST(LipApproximant, ErrorsDecreaseAlongOddGrid) {
  TargetFunction f{[](double x) { return std::fabs(x - 0.5); }, LipBound{1.0, 1.0}, "abs"};
  double prev = 1.0;
  for (int m : {9, 17, 33, 65, 129}) {
    const LipApproximation a = lip_alpha_approximant(f, 1.0, m, 8);
    EXPECT_LE(a.record.sup_error, a.bound) << m;
    EXPECT_LT(a.record.sup_error, prev) << m;
    prev = a.record.sup_error;
  }
}

TEST(SobolevSplit, ConstantDerivativeHasNoRemainder) {
  const SobolevSplit s = sobolev_split([](double) { return 2.0; }, 2.0, 1.0);
  EXPECT_NEAR(s.lambda, 2.0, 1e-12);
  for (double x : {0.0, 0.3, 1.0}) {
    EXPECT_NEAR(s.f1(x), 0.0, 1e-12);
    EXPECT_NEAR(s.f0(x), 2.0 * x, 1e-12);
  }
}

TEST(SobolevSplit, SingularDerivative) {
  auto fp = [](double x) { return std::pow(x, -1.0 / 3.0); };
  const double t = 0.1;
  const SobolevSplit s = sobolev_split(fp, 2.0, t, 0.25);
  // ||x^-1/3||_2 = sqrt(3); the midpoint rule underestimates it slightly.
  EXPECT_NEAR(s.lp_norm, std::sqrt(3.0), 5e-2);
  EXPECT_NEAR(s.lambda, s.lp_norm / std::sqrt(t), 1e-12);
  EXPECT_LE(s.l1_f1prime + t * s.linf_f0prime,
            s.realized_constant * s.lp_norm * std::sqrt(t) * (1.0 + 1e-12));
  EXPECT_LE(s.realized_constant, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double x = i / 99.0;
    EXPECT_NEAR(s.f0(x) + s.f1(x), integrate_derivative(fp, x, 0.25), 1e-8);
  }
  // Antiderivative of x^-1/3 is 1.5 x^(2/3).
  EXPECT_NEAR(integrate_derivative(fp, 1.0, 0.25), 1.75, 2e-2);
  EXPECT_EQ(s.f1(0.0), 0.0);
  EXPECT_EQ(s.f0(0.0), 0.25);
}

TEST(SobolevSplit, RejectsBadExponents) {
  auto fp = [](double) { return 1.0; };
  EXPECT_THROW((void)sobolev_split(fp, 1.0, 0.1), ArgumentError);
  EXPECT_THROW((void)sobolev_split(fp, INFINITY, 0.1), ArgumentError);
  EXPECT_THROW((void)sobolev_split(fp, 2.0, 0.0), ArgumentError);
  EXPECT_THROW((void)integrate_derivative(fp, 1.5), DomainError);
}

TEST(MeasureSigma, ExactForNetworkFunctions) {
  const CompiledSpecial c = compile_spline(hat(), 4);
  const Cpwl g = extract_cpwl(c.net);
  TargetFunction self{[&](double x) { return g(x); }, {}, "self"};
  EXPECT_EQ(measure_sigma(self, AnyNetwork(c.net), 17), 0.0);
  TargetFunction h{[](double x) { return oracle::hat(x); }, {}, "hat"};
  EXPECT_LE(measure_sigma(h, AnyNetwork(c.net), 2), 1e-9);
  // Breakpoints are included even on a two-point grid.
  TargetFunction zero{[](double) { return 0.0; }, {}, "zero"};
  EXPECT_EQ(measure_sigma(zero, AnyNetwork(c.net), 2), 1.0);
  EXPECT_THROW((void)measure_sigma(zero, AnyNetwork(c.net), 1), ArgumentError);
}

TEST(MeasureSigma, TakagiWithinDyadicBound) {
  std::vector<double> c(10), full(30);
  for (int k = 0; k < 30; ++k) full[k] = std::ldexp(1.0, -(k + 1));
  std::copy(full.begin(), full.begin() + 10, c.begin());
  TargetFunction t{[&](double x) { return oracle::hat_series(x, full); }, {}, "takagi"};
  EXPECT_LE(measure_sigma(t, AnyNetwork(takagi_network(c)), 4097), std::ldexp(1.0, -10));
}

std::vector<double> dyadic(int m) {
  std::vector<double> c(m);
  for (int k = 0; k < m; ++k) c[k] = std::ldexp(1.0, -(k + 1));
  return c;
}

TEST(RateExperiment, TakagiErrorsHalve) {
  const std::vector<double> full = dyadic(40);
  TargetFunction t{[&](double x) { return oracle::hat_series(x, full); }, {}, "takagi"};
  std::vector<int> ms;
  for (int m = 1; m <= 10; ++m) ms.push_back(m);
  const auto rows = rate_experiment(
      t, [](int m) { return AnyNetwork(takagi_network(dyadic(m))); }, ms, 4097, 2);
  ASSERT_EQ(rows.size(), ms.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].m, ms[i]);
    EXPECT_TRUE(rows[i].error.empty());
    EXPECT_LE(rows[i].sup_error, std::ldexp(1.0, -ms[i]));
    EXPECT_EQ(rows[i].wall_ms, 0.0);
    if (i > 0) {
      EXPECT_LE(rows[i].sup_error, rows[i - 1].sup_error);
      EXPECT_NEAR(rows[i].sup_error / rows[i - 1].sup_error, 0.5, 0.2);
    }
  }
  EXPECT_LE(empirical_ar_seminorm(rows, 1.0), 11.0);
}

TEST(RateExperiment, ConstantTargetAndFailures) {
  TargetFunction zero{[](double) { return 0.0; }, {}, "zero"};
  const int ms[] = {1, 2, 3};
  const auto rows = rate_experiment(
      zero,
      [](int m) -> AnyNetwork {
        if (m == 2) throw ArgumentError("boom");
        return AnyNetwork(zero_special(4, static_cast<std::size_t>(m)));
      },
      ms, 33, 1);
  EXPECT_EQ(rows[0].sup_error, 0.0);
  EXPECT_EQ(rows[1].error, "boom");
  EXPECT_EQ(rows[2].sup_error, 0.0);
  EXPECT_EQ(rows[2].params, param_count(4, 3));
  const std::string csv = records_to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "m,params,sup_error,wall_ms");
  EXPECT_NE(csv.find("\n2,0,nan,"), std::string::npos);

  const int bad[] = {2, 1};
  EXPECT_THROW((void)rate_experiment(zero, [](int) { return AnyNetwork(zero_special(4, 1)); },
                                     bad, 33),
               ArgumentError);
}

TEST(RateExperiment, ThreadCountDoesNotChangeRows) {
  const std::vector<double> full = dyadic(30);
  TargetFunction t{[&](double x) { return oracle::hat_series(x, full); }, {}, "takagi"};
  const int ms[] = {1, 2, 3, 4, 5, 6};
  auto build = [](int m) { return AnyNetwork(takagi_network(dyadic(m))); };
  EXPECT_EQ(records_to_csv(rate_experiment(t, build, ms, 513, 1)),
            records_to_csv(rate_experiment(t, build, ms, 513, 3)));
}

TEST(LoglogSlope, RecoversPowerLaw) {
  const double x[] = {1.0, 2.0, 4.0, 8.0};
  const double y[] = {3.0, 0.75, 0.1875, 0.046875};
  EXPECT_NEAR(loglog_slope(x, y), -2.0, 1e-12);
  const double neg[] = {1.0, -1.0, 1.0, 1.0};
  EXPECT_THROW((void)loglog_slope(x, neg), DomainError);
}

}  // namespace
}  // namespace spline2relu

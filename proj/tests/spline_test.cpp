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

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "spline2relu/combinators.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

// Independent depth rule: 2 ceil(n / capacity), at least 2, with
// capacity 2(W-2) for W <= 7 and floor((W-2)/6)(W-2) above.
std::size_t expected_depth(std::size_t w, std::size_t n) {
  const std::size_t cap = w <= 7 ? 2 * (w - 2) : ((w - 2) / 6) * (w - 2);
  return std::max<std::size_t>(2, 2 * ((n + cap - 1) / cap));
}

TEST(Spline, HatAtWidthFourHasThirtyThreeParameters) {
  const CompiledSpecial c = compile_spline(hat(), 4);
  EXPECT_EQ(c.report.params, 33u);
  EXPECT_EQ(c.net.param_count(), 33u);
  EXPECT_EQ(c.report.depth, 2u);
  EXPECT_EQ(sup_diff(extract_cpwl(c.net), hat()), 0.0);
}

TEST(Spline, ExactAndWithinBudgetOnRandomSplines) {
  oracle::Rng rng(21);
  std::uniform_int_distribution<int> nd(1, 120);
  for (std::size_t w : {4u, 5u, 6u, 7u, 8u, 9u, 13u, 14u, 20u}) {
    for (int trial = 0; trial < 12; ++trial) {
      const int n = trial < 3 ? trial + 1 : nd(rng);
      const Cpwl t = oracle::random_spline(rng, n);
      const CompiledSpecial c = compile_spline(t, w);
      EXPECT_LE(sup_diff(extract_cpwl(c.net), t), 1e-9) << "W=" << w << " n=" << n;
      EXPECT_EQ(c.report.depth, expected_depth(w, n)) << "W=" << w << " n=" << n;
      EXPECT_EQ(c.report.params, param_count(w, c.report.depth));
      EXPECT_TRUE(c.report.within_budget()) << "W=" << w << " n=" << n;
      EXPECT_EQ(c.report.target_breakpoints, static_cast<std::size_t>(n));
    }
  }
}

TEST(Spline, BudgetRegimes) {
  EXPECT_DOUBLE_EQ(spline_budget(4, 4), 76.0);
  EXPECT_DOUBLE_EQ(spline_budget(4, 3), 33.0);
  EXPECT_DOUBLE_EQ(spline_budget(6, 8), 200.0);
  EXPECT_DOUBLE_EQ(spline_budget(6, 7), 61.0);
  EXPECT_DOUBLE_EQ(spline_budget(8, 6), 366.0);
  EXPECT_DOUBLE_EQ(spline_budget(8, 5), 97.0);
  EXPECT_EQ(hats_per_principal(8), 1u);
  EXPECT_EQ(hats_per_principal(14), 2u);
  EXPECT_EQ(hats_per_principal(7), 2u);
  EXPECT_EQ(block_capacity(14), 24u);
  EXPECT_THROW((void)compile_spline(hat(), 3), ArgumentError);
}

TEST(Spline, AffineTargetsNeedNoBreakpoints) {
  for (std::size_t w : {4u, 8u, 11u}) {
    const Cpwl t = Cpwl::affine(-2.5, 0.75);
    const CompiledSpecial c = compile_spline(t, w);
    EXPECT_EQ(c.report.target_breakpoints, 0u);
    EXPECT_LE(sup_diff(extract_cpwl(c.net), t), 1e-12);
  }
}

TEST(Spline, WidthSevenIsFlagged) {
  const CompiledSpecial c = compile_spline(hat(), 7);
  EXPECT_FALSE(c.report.note.empty());
  EXPECT_TRUE(compile_spline(hat(), 6).report.note.empty());
}

TEST(Spline, HatCoefficientsReproduceValues) {
  oracle::Rng rng(22);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t w : {8u, 14u, 20u}) {
    const std::size_t q = hats_per_principal(w);
    const std::size_t n = q * (w - 2);
    std::vector<double> nodes{0.0};
    for (double x : oracle::interior_points(rng, static_cast<int>(n))) nodes.push_back(x);
    nodes.push_back(1.0);
    std::vector<double> vals(n);
    for (double& v : vals) v = u(rng);
    const std::vector<double> c = hat_coefficients(nodes, vals, q);
    // phi_k rises on [X_{k-1}, X_{jq}] and falls on [X_{jq}, X_{jq+1}],
    // j = ceil(k / q).
    auto phi = [&](std::size_t k, double x) {
      const std::size_t j = (k + q - 1) / q;
      const double l = nodes[k - 1], p = nodes[j * q], r = nodes[j * q + 1];
      if (x <= l || x >= r) return 0.0;
      return x <= p ? (x - l) / (p - l) : (r - x) / (r - p);
    };
    for (std::size_t i = 1; i <= n; ++i) {
      double s = 0.0;
      for (std::size_t k = 1; k <= n; ++k) s += c[k - 1] * phi(k, nodes[i]);
      EXPECT_NEAR(s, vals[i - 1], 1e-9);
    }
  }
}

TEST(Spline, PartitionClassesAreSignedAndSpread) {
  oracle::Rng rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t w : {8u, 14u, 26u}) {
    const std::size_t q = hats_per_principal(w);
    std::vector<double> c(q * (w - 2));
    for (double& v : c) v = u(rng);
    c[3] = 0.0;
    const auto classes = partition_indices(c, q, w);
    EXPECT_EQ(classes.size(), w - 2);
    std::set<std::size_t> seen;
    for (const auto& cls : classes) {
      for (std::size_t a = 0; a < cls.size(); ++a) {
        EXPECT_TRUE(seen.insert(cls[a]).second);
        EXPECT_EQ(c[cls[a]] > 0.0, c[cls.front()] > 0.0);
        for (std::size_t b = a + 1; b < cls.size(); ++b) {
          const std::size_t ja = cls[a] / q, jb = cls[b] / q;
          EXPECT_GE(jb > ja ? jb - ja : ja - jb, 3u);
        }
      }
    }
    EXPECT_EQ(seen.size(), c.size() - 1);
    EXPECT_EQ(seen.count(3), 0u);
  }
  std::vector<double> bad(7, 1.0);
  EXPECT_THROW((void)partition_indices(bad, 1, 8), ArgumentError);
}

TEST(Spline, OneLayerCompilerAgreesWithBlocks) {
  oracle::Rng rng(24);
  for (int n = 1; n <= 9; ++n) {
    const Cpwl t = oracle::random_spline(rng, n);
    const CompiledStandard one = compile_one_layer(t, 10);
    EXPECT_EQ(one.net.depth(), 1u);
    EXPECT_EQ(one.report.params, 31u);
    const CompiledSpecial deep = compile_spline(t, 10);
    EXPECT_LE(sup_diff(extract_cpwl(one.net), extract_cpwl(deep.net)), 1e-9);
  }
  EXPECT_THROW((void)compile_one_layer(oracle::random_spline(rng, 10), 10), ArgumentError);
}

}  // namespace
}  // namespace spline2relu

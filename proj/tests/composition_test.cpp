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

#include <random>
#include <vector>

#include "oracles.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

// Inner factors map [0,1] into [0,1]; the outer one is arbitrary.
std::vector<Cpwl> random_chain(oracle::Rng& rng, int len) {
  std::uniform_int_distribution<int> nb(1, 12);
  std::uniform_real_distribution<double> u(0.0, 0.3);
  std::vector<Cpwl> chain;
  for (int j = 0; j < len; ++j) {
    if (j + 1 < len) {
      // Range strictly inside [0,1] so the renormalization is non-trivial.
      const double lo = u(rng), hi = 1.0 - u(rng);
      chain.push_back(oracle::random_spline(rng, nb(rng), lo, hi));
    } else {
      chain.push_back(oracle::random_spline(rng, nb(rng), -3.0, 2.0));
    }
  }
  return chain;
}

double chain_eval(const std::vector<Cpwl>& chain, double x) {
  for (const Cpwl& f : chain) x = oracle::interp(f, x);
  return x;
}

TEST(Composition, RepresentativesPreserveTheComposition) {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<Cpwl> chain = random_chain(rng, 1 + trial % 5);
    const std::vector<Cpwl> rep = representative_chain(chain);
    ASSERT_EQ(rep.size(), chain.size());
    for (std::size_t j = 0; j + 1 < rep.size(); ++j) {
      EXPECT_NEAR(rep[j].min_value(), 0.0, 1e-12);
      EXPECT_NEAR(rep[j].max_value(), 1.0, 1e-12);
    }
    EXPECT_LE(oracle::grid_diff([&](double x) { return chain_eval(chain, x); },
                                [&](double x) { return chain_eval(rep, x); }, 2001),
              1e-9);
  }
}

TEST(Composition, RejectsConstantAndEscapingFactors) {
  const std::vector<Cpwl> constant{Cpwl::constant(0.5), hat()};
  EXPECT_THROW((void)representative_chain(constant), StructureError);
  const std::vector<Cpwl> escape{Cpwl::affine(3.0, 0.0), hat()};
  EXPECT_THROW((void)representative_chain(escape), DomainError);
  // Constant on the input range of the later factor.
  const std::vector<Cpwl> flat{Cpwl({0.0, 0.5, 1.0}, {0.0, 0.5, 0.5}),
                               Cpwl({0.0, 0.5, 1.0}, {0.0, 0.0, 1.0}), hat()};
  EXPECT_THROW((void)representative_chain(flat), StructureError);
  EXPECT_THROW((void)representative_chain(std::vector<Cpwl>{}), ArgumentError);
}

TEST(Composition, CompiledChainIsExactAndWithinBudget) {
  oracle::Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<Cpwl> chain = random_chain(rng, 1 + trial % 4);
    const std::size_t w = 8 + trial % 7;
    const CompiledStandard c = compile_composition(chain, w);
    EXPECT_LE(oracle::grid_diff([&](double x) { return forward(c.net, x); },
                                [&](double x) { return chain_eval(chain, x); }, 2001),
              1e-9);
    Cpwl want = chain[0];
    for (std::size_t j = 1; j < chain.size(); ++j) want = compose(chain[j], want);
    EXPECT_LE(sup_diff(extract_cpwl(c.net), want), 1e-9);
    EXPECT_TRUE(c.report.within_budget()) << c.report.params << " > " << c.report.budget_bound;
    EXPECT_EQ(c.net.width(), w);
  }
}

TEST(Composition, SumOfCompositions) {
  oracle::Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<CompositionTerm> terms;
    for (int i = 0; i < 1 + trial % 3; ++i) {
      terms.push_back({i % 2 == 0 ? 1.0 : -2.0, random_chain(rng, 1 + (trial + i) % 3)});
    }
    const std::size_t w = 10 + trial % 5;
    const CompiledSpecial c = compile_sum_of_compositions(terms, w);
    EXPECT_EQ(c.net.width(), w);
    EXPECT_LE(oracle::grid_diff([&](double x) { return forward(c.net, x); },
                                [&](double x) {
                                  double s = 0.0;
                                  for (const auto& t : terms) s += t.weight * chain_eval(t.chain, x);
                                  return s;
                                },
                                2001),
              1e-9);
    EXPECT_TRUE(c.report.within_budget()) << c.report.params << " > " << c.report.budget_bound;
  }
  std::vector<CompositionTerm> one{{1.0, {hat()}}};
  EXPECT_THROW((void)compile_sum_of_compositions(one, 9), ArgumentError);
}

}  // namespace
}  // namespace spline2relu

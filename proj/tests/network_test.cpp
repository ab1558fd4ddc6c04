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


#include "spline2relu/network.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "oracles.hpp"
#include "spline2relu/combinators.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

TEST(Network, ParamCountFormula) {
  // Count entries directly: W + W, (L - 1)(W^2 + W), W + 1, minus the
  // (W - 1)^2 - 2 offset of the closed form.
  for (std::size_t w = 1; w <= 12; ++w) {
    for (std::size_t l = 1; l <= 6; ++l) {
      const std::size_t direct = 2 * w + (l - 1) * (w * w + w) + w + 1;
      EXPECT_EQ(param_count(w, l), direct) << w << "," << l;
    }
  }
  EXPECT_EQ(param_count(4, 2), 33u);
  EXPECT_THROW((void)param_count(0, 1), ArgumentError);
  EXPECT_THROW((void)param_count(3, 0), ArgumentError);
}

TEST(Network, ValidatesShapes) {
  auto in = AffineLayer::zeros(3, 1);
  auto out = AffineLayer::zeros(1, 3);
  EXPECT_NO_THROW(ReluNetwork({in, out}));
  EXPECT_THROW(ReluNetwork({in}), StructureError);
  EXPECT_THROW(ReluNetwork({in, AffineLayer::zeros(1, 2)}), StructureError);
  EXPECT_THROW(ReluNetwork({AffineLayer::zeros(3, 2), out}), StructureError);
  auto bad = out;
  bad.weights[1] = INFINITY;
  EXPECT_THROW(ReluNetwork({in, bad}), StructureError);
  const ReluNetwork net({in, out});
  EXPECT_EQ(net.param_count(), param_count(3, 1));
}

TEST(Network, SpecialStructureIsChecked) {
  oracle::Rng rng(8);
  const ReluNetwork plain = oracle::random_network(rng, 5, 3);
  EXPECT_THROW(SpecialNetwork{plain}, StructureError);
  const SpecialNetwork z = zero_special(5, 3);
  EXPECT_EQ(z.width(), 5u);
  EXPECT_EQ(z.depth(), 3u);
  // Breaking one structural entry is detected.
  std::vector<AffineLayer> layers(z.layers().begin(), z.layers().end());
  layers[1].at(0, 2) = 0.5;
  EXPECT_THROW(SpecialNetwork(ReluNetwork(layers)), StructureError);
  EXPECT_THROW(SpecialNetwork(oracle::random_network(rng, 3, 2)), StructureError);
}

TEST(Network, ForwardMatchesTextbook) {
  oracle::Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const ReluNetwork net = oracle::random_network(rng, 2 + trial % 7, 1 + trial % 5);
    for (int i = 0; i <= 50; ++i) {
      const double x = i / 50.0;
      EXPECT_NEAR(forward(net, x), oracle::forward(net, x), 1e-12);
    }
  }
}

TEST(Network, ExtractionMatchesForward) {
  oracle::Rng rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const ReluNetwork net = oracle::random_network(rng, 2 + trial % 8, 1 + trial % 6);
    const Cpwl f = extract_cpwl(net);
    EXPECT_LE(oracle::grid_diff([&](double x) { return f(x); },
                                [&](double x) { return oracle::forward(net, x); }, 4001),
              1e-11);
  }
}

TEST(Network, SpecialForwardKeepsSourceAndCollationLinear) {
  // Width 4 special net whose collation goes negative: a ReLU there would
  // clip it, the special forward must not.
  auto in = AffineLayer::zeros(4, 1);
  in.weights = {1.0, 1.0, 0.0, 0.0};
  auto mid = AffineLayer::zeros(4, 4);
  mid.at(0, 0) = 1.0;
  mid.at(3, 3) = 1.0;
  mid.at(3, 1) = -1.0;
  mid.at(1, 0) = 1.0;
  auto out = AffineLayer::zeros(1, 4);
  out.at(0, 3) = 1.0;
  const SpecialNetwork s(ReluNetwork({in, mid, out}));
  EXPECT_DOUBLE_EQ(forward(s, 0.5), -0.5);
  EXPECT_DOUBLE_EQ(oracle::forward(s, 0.5), -0.5);
  const Cpwl f = extract_cpwl(s);
  EXPECT_DOUBLE_EQ(f(1.0), -1.0);
  const auto coll = collation_values(s);
  ASSERT_EQ(coll.size(), 2u);
  EXPECT_DOUBLE_EQ(coll[0](1.0), 0.0);
  EXPECT_DOUBLE_EQ(coll[1](1.0), -1.0);
}

TEST(Network, AnyNetworkHelpers) {
  const AnyNetwork a = zero_special(6, 2);
  EXPECT_EQ(width_of(a), 6u);
  EXPECT_EQ(depth_of(a), 2u);
  EXPECT_EQ(param_count_of(a), param_count(6, 2));
  EXPECT_EQ(forward(a, 0.3), 0.0);
}

}  // namespace
}  // namespace spline2relu

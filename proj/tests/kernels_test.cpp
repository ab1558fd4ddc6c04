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


#include "spline2relu/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "spline2relu/errors.hpp"
#include "spline2relu/network.hpp"

namespace spline2relu::kernels {
namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(Kernels, ScalarIsAlwaysAvailable) {
  EXPECT_TRUE(isa_available(Isa::kScalar));
  const auto isas = available_isas();
  ASSERT_FALSE(isas.empty());
  EXPECT_EQ(isas.front(), Isa::kScalar);
  EXPECT_EQ(isa_name(Isa::kScalar), "scalar");
}

TEST(Kernels, UnavailableVariantThrows) {
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (!isa_available(isa)) {
      EXPECT_THROW((void)kernels_for(isa), ArgumentError);
    }
  }
}

TEST(Kernels, ScalarAffineMatchesTextbook) {
  std::mt19937_64 rng(5);
  const std::size_t rows = 5, cols = 7, batch = 13;
  const auto w = random_vec(rng, rows * cols);
  const auto b = random_vec(rng, rows);
  const auto in = random_vec(rng, cols * batch);
  const std::vector<std::uint8_t> relu{1, 0, 1, 1, 0};
  std::vector<double> out(rows * batch);
  kernels_for(Isa::kScalar).affine_batch(w.data(), b.data(), rows, cols, relu.data(),
                                         in.data(), out.data(), batch);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t p = 0; p < batch; ++p) {
      double acc = b[i];
      for (std::size_t j = 0; j < cols; ++j) acc += w[i * cols + j] * in[j * batch + p];
      if (relu[i]) acc = std::max(acc, 0.0);
      EXPECT_NEAR(out[i * batch + p], acc, 1e-14);
    }
  }
}

// Every SIMD variant is bit-identical to the scalar reference, including
// ragged batch tails.
TEST(Kernels, VariantsAgreeBitForBit) {
  std::mt19937_64 rng(6);
  const KernelTable& ref = kernels_for(Isa::kScalar);
  for (Isa isa : available_isas()) {
    const KernelTable& k = kernels_for(isa);
    for (std::size_t batch : {1u, 3u, 4u, 5u, 8u, 17u, 64u, 101u}) {
      for (std::size_t cols : {1u, 4u, 9u}) {
        const std::size_t rows = 6;
        const auto w = random_vec(rng, rows * cols);
        const auto b = random_vec(rng, rows);
        const auto in = random_vec(rng, cols * batch);
        const std::vector<std::uint8_t> relu{1, 1, 0, 1, 0, 1};
        std::vector<double> o1(rows * batch), o2(rows * batch);
        ref.affine_batch(w.data(), b.data(), rows, cols, relu.data(), in.data(), o1.data(), batch);
        k.affine_batch(w.data(), b.data(), rows, cols, relu.data(), in.data(), o2.data(), batch);
        EXPECT_TRUE(bit_equal(o1, o2)) << isa_name(isa) << " batch " << batch;

        auto y1 = random_vec(rng, batch);
        auto y2 = y1;
        const auto x = random_vec(rng, batch);
        ref.axpy(0.37, x.data(), y1.data(), batch);
        k.axpy(0.37, x.data(), y2.data(), batch);
        EXPECT_TRUE(bit_equal(y1, y2)) << isa_name(isa);

        EXPECT_EQ(ref.max_abs_diff(x.data(), y1.data(), batch),
                  k.max_abs_diff(x.data(), y1.data(), batch));
      }
    }
  }
}

TEST(Kernels, MaxAbsDiffPropagatesNan) {
  for (Isa isa : available_isas()) {
    const KernelTable& k = kernels_for(isa);
    for (std::size_t pos : {0u, 3u, 6u, 8u}) {
      std::vector<double> x(9, 1.0), y(9, 0.5);
      x[pos] = std::numeric_limits<double>::quiet_NaN();
      EXPECT_TRUE(std::isnan(k.max_abs_diff(x.data(), y.data(), 9))) << isa_name(isa);
    }
    EXPECT_EQ(k.max_abs_diff(nullptr, nullptr, 0), 0.0);
  }
}

TEST(Kernels, ForwardBatchAgreesAcrossVariants) {
  oracle::Rng rng(7);
  const ReluNetwork net = oracle::random_network(rng, 9, 6);
  std::vector<double> xs;
  for (int i = 0; i <= 257; ++i) xs.push_back(i / 257.0);
  std::vector<double> ref(xs.size());
  forward_batch(net, xs, ref, kernels_for(Isa::kScalar));
  for (Isa isa : available_isas()) {
    std::vector<double> out(xs.size());
    forward_batch(net, xs, out, kernels_for(isa));
    EXPECT_TRUE(bit_equal(ref, out)) << isa_name(isa);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NEAR(ref[i], oracle::forward(net, xs[i]), 1e-12);
    EXPECT_EQ(ref[i], forward(net, xs[i]));
  }
}

}  // namespace
}  // namespace spline2relu::kernels

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


// Randomized networks with known functions, built from the library's
// one-layer compiler. Function values are checked against oracle helpers.

#pragma once

#include <cstddef>
#include <random>
#include <utility>

#include "oracles.hpp"
#include "spline2relu/combinators.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/cpwl.hpp"

namespace fixture {

struct UnitNet {
  spline2relu::ReluNetwork net;
  spline2relu::Cpwl fn;
};

/// Width-W depth-L network whose function maps [0,1] into [0,1]: a chain of
/// one-layer networks for random splines.
inline UnitNet unit_net(oracle::Rng& rng, std::size_t width, std::size_t depth) {
  using namespace spline2relu;
  std::uniform_int_distribution<int> nb(1, static_cast<int>(width) - 1);
  Cpwl f = oracle::random_spline(rng, nb(rng), 0.0, 1.0);
  ReluNetwork net = compile_one_layer(f, width).net;
  for (std::size_t l = 1; l < depth; ++l) {
    const Cpwl g = oracle::random_spline(rng, nb(rng), 0.0, 1.0);
    net = compose_nets(net, compile_one_layer(g, width).net);
    f = compose(g, f);
  }
  return {std::move(net), f};
}

}  // namespace fixture

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

#pragma once

#include <span>

#include "spline2relu/network.hpp"

namespace spline2relu::detail {

// Two-layer special network for a residual that vanishes outside
// [nodes.front(), nodes.back()] with values at the N interior nodes.
SpecialNetwork core_block(std::span<const double> nodes,
                          std::span<const double> values, std::size_t width);

// Adds a x + b to the output of a special network via the source channel.
SpecialNetwork add_affine_output(const SpecialNetwork& s, double a, double b);

}  // namespace spline2relu::detail

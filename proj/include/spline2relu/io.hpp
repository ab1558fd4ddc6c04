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


// Text formats for splines and networks.
//
// Spline file: a node count on the first line, then one "x v" pair per line
// in ascending x.
//
// Network file: "W L", then "special 0|1", then for each of the L + 1 affine
// maps a "rows cols" line, one line per matrix row and one bias line.
// Numbers are written with 17 significant digits.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "spline2relu/cpwl.hpp"
#include "spline2relu/network.hpp"

namespace spline2relu {

void write_spline(std::ostream& os, const Cpwl& f);
/// Throws ParseError (with line number) on malformed input.
[[nodiscard]] Cpwl read_spline(std::istream& is);

void write_network(std::ostream& os, const AnyNetwork& net);
/// Re-validates the special structure when the flag is set.
[[nodiscard]] AnyNetwork read_network(std::istream& is);

[[nodiscard]] Cpwl load_spline(const std::filesystem::path& path);
void save_spline(const std::filesystem::path& path, const Cpwl& f);
[[nodiscard]] AnyNetwork load_network(const std::filesystem::path& path);
void save_network(const std::filesystem::path& path, const AnyNetwork& net);

/// "%.17g" formatting.
[[nodiscard]] std::string format_double(double v);

}  // namespace spline2relu

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

#include <cstdlib>
#include <string>

#include "spline2relu/errors.hpp"
#include "spline2relu/kernels.hpp"

namespace spline2relu::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& pick_default() {
  if (const char* env = std::getenv("SPLINE2RELU_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return detail::kScalarTable;
    if (want == "avx2" && isa_available(Isa::kAvx2)) return *detail::avx2_table();
    if (want == "neon" && isa_available(Isa::kNeon)) return *detail::neon_table();
  }
  if (isa_available(Isa::kAvx2)) return *detail::avx2_table();
  if (isa_available(Isa::kNeon)) return *detail::neon_table();
  return detail::kScalarTable;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return detail::avx2_table() != nullptr && cpu_has_avx2();
    case Isa::kNeon:
      // Advanced SIMD is mandatory on AArch64.
      return detail::neon_table() != nullptr;
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw ArgumentError("kernel variant not available: " +
                        std::string(isa_name(isa)));
  }
  switch (isa) {
    case Isa::kAvx2:
      return *detail::avx2_table();
    case Isa::kNeon:
      return *detail::neon_table();
    case Isa::kScalar:
      break;
  }
  return detail::kScalarTable;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = pick_default();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::kScalar};
  if (isa_available(Isa::kAvx2)) out.push_back(Isa::kAvx2);
  if (isa_available(Isa::kNeon)) out.push_back(Isa::kNeon);
  return out;
}

}  // namespace spline2relu::kernels

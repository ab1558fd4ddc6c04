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

#include <algorithm>
#include <optional>
#include <string>

#include "spline2relu/combinators.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

constexpr double kRangeTol = 1e-9;

}  // namespace

std::vector<Cpwl> representative_chain(std::span<const Cpwl> chain) {
  if (chain.empty()) throw ArgumentError("empty composition chain");
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (chain[j].max_value() == chain[j].min_value()) {
      throw StructureError("constant factor at position " + std::to_string(j) +
                           " in composition chain");
    }
  }
  std::vector<Cpwl> out;
  out.reserve(chain.size());
  double lo = 0.0;
  double hi = 1.0;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    const Cpwl g = j == 0 ? chain[0] : restrict_affine(chain[j], lo, hi);
    if (j + 1 == chain.size()) {
      out.push_back(g);
      break;
    }
    const double mn = g.min_value();
    const double mx = g.max_value();
    if (mn < -kRangeTol || mx > 1.0 + kRangeTol) {
      throw DomainError("factor " + std::to_string(j) +
                        " leaves [0,1] on its input range");
    }
    if (!(mx > mn)) {
      throw StructureError("factor " + std::to_string(j) +
                           " is constant on its input range");
    }
    out.push_back(scale_shift(g, 1.0 / (mx - mn), -mn / (mx - mn)));
    lo = std::max(mn, 0.0);
    hi = std::min(mx, 1.0);
  }
  return out;
}

CompiledStandard compile_composition(std::span<const Cpwl> chain,
                                     std::size_t width) {
  if (width < 4) throw ArgumentError("unsupported width " + std::to_string(width));
  const std::vector<Cpwl> rep = representative_chain(chain);
  std::optional<ReluNetwork> net;
  std::size_t sum_n = 0;
  std::size_t sum_rep_n = 0;
  for (std::size_t j = 0; j < rep.size(); ++j) {
    sum_n += canonicalize(chain[j]).interior_count();
    CompiledSpecial factor = compile_spline(rep[j], width);
    sum_rep_n += factor.report.target_breakpoints;
    ReluNetwork plain = special_to_standard(factor.net);
    net = net ? compose_nets(*net, plain) : std::move(plain);
  }
  CompileReport report;
  report.width = width;
  report.depth = net->depth();
  report.params = net->param_count();
  report.target_breakpoints = sum_n;
  const double w = static_cast<double>(width);
  report.budget_bound = 34.0 * static_cast<double>(sum_rep_n) +
                        2.0 * static_cast<double>(rep.size()) * (w * w + w);
  report.budget_applies = width >= 8;
  report.regime = "composition of " + std::to_string(rep.size()) + " factors";
  return {std::move(*net), report};
}

CompiledSpecial compile_sum_of_compositions(
    std::span<const CompositionTerm> terms, std::size_t width) {
  if (width < 10) {
    throw ArgumentError("sums of compositions need W >= 10, got " +
                        std::to_string(width));
  }
  if (terms.empty()) throw ArgumentError("no composition terms");
  std::vector<ReluNetwork> nets;
  std::vector<double> weights;
  std::size_t sum_n = 0;
  std::size_t sum_len = 0;
  for (const CompositionTerm& term : terms) {
    CompiledStandard c = compile_composition(term.chain, width - 2);
    sum_n += c.report.target_breakpoints;
    sum_len += term.chain.size();
    nets.push_back(std::move(c.net));
    weights.push_back(term.weight);
  }
  SpecialNetwork net = stack_sum(nets, weights);
  CompileReport report;
  report.width = width;
  report.depth = net.depth();
  report.params = net.param_count();
  report.target_breakpoints = sum_n;
  const double w = static_cast<double>(width);
  report.budget_bound = 44.0 * static_cast<double>(sum_n) +
                        2.0 * w * (w + 1.0) * static_cast<double>(sum_len);
  report.regime = "stacked compositions";
  return {std::move(net), report};
}

}  // namespace spline2relu

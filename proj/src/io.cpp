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


#include "spline2relu/io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

// Whitespace tokenizer that remembers the line of the last token.
class Tokens {
 public:
  explicit Tokens(std::istream& is) : is_(is) {}

  std::size_t line() const { return tok_line_; }

  bool next(std::string& out) {
    out.clear();
    int c;
    while ((c = is_.get()) != EOF) {
      if (c == '\n') {
        ++line_;
        continue;
      }
      if (!std::isspace(c)) break;
    }
    if (c == EOF) return false;
    tok_line_ = line_;
    out.push_back(static_cast<char>(c));
    while ((c = is_.peek()) != EOF && !std::isspace(c)) {
      out.push_back(static_cast<char>(is_.get()));
    }
    return true;
  }

  std::string word(const char* what) {
    std::string t;
    if (!next(t)) throw ParseError(std::string("unexpected end of input, expected ") + what, tok_line_);
    return t;
  }

  double real(const char* what) {
    const std::string t = word(what);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
      throw ParseError("expected " + std::string(what) + ", got '" + t + "'", tok_line_);
    }
    return v;
  }

  std::size_t count(const char* what) {
    const std::string t = word(what);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE) {
      throw ParseError("expected " + std::string(what) + ", got '" + t + "'", tok_line_);
    }
    return static_cast<std::size_t>(v);
  }

  void expect_end() {
    std::string t;
    if (next(t)) throw ParseError("trailing content '" + t + "'", tok_line_);
  }

 private:
  std::istream& is_;
  std::size_t line_ = 1;
  std::size_t tok_line_ = 1;
};

void write_row(std::ostream& os, const double* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (i) os << ' ';
    os << format_double(v[i]);
  }
  os << '\n';
}

const ReluNetwork& plain(const AnyNetwork& net) {
  if (const auto* s = std::get_if<SpecialNetwork>(&net)) return s->inner();
  return std::get<ReluNetwork>(net);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_spline(std::ostream& os, const Cpwl& f) {
  const auto xs = f.breakpoints();
  const auto vs = f.values();
  os << xs.size() << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    os << format_double(xs[i]) << ' ' << format_double(vs[i]) << '\n';
  }
}

Cpwl read_spline(std::istream& is) {
  Tokens tok(is);
  const std::size_t n = tok.count("node count");
  if (n < 2) throw ParseError("need at least 2 nodes", tok.line());
  std::vector<double> xs(n), vs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = tok.real("breakpoint");
    vs[i] = tok.real("value");
    const std::size_t line = tok.line();
    if (i == 0 && xs[i] != 0.0) throw ParseError("first breakpoint must be 0", line);
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw ParseError("breakpoints must be strictly increasing", line);
    }
    if (i + 1 == n && xs[i] != 1.0) throw ParseError("last breakpoint must be 1", line);
  }
  tok.expect_end();
  return Cpwl(std::move(xs), std::move(vs));
}

void write_network(std::ostream& os, const AnyNetwork& net) {
  const ReluNetwork& p = plain(net);
  os << p.width() << ' ' << p.depth() << '\n';
  os << "special " << (std::holds_alternative<SpecialNetwork>(net) ? 1 : 0) << '\n';
  for (const AffineLayer& l : p.layers()) {
    os << l.rows << ' ' << l.cols << '\n';
    for (std::size_t r = 0; r < l.rows; ++r) write_row(os, &l.weights[r * l.cols], l.cols);
    write_row(os, l.bias.data(), l.rows);
  }
}

AnyNetwork read_network(std::istream& is) {
  Tokens tok(is);
  const std::size_t width = tok.count("width");
  const std::size_t depth = tok.count("depth");
  const std::size_t header_line = tok.line();
  if (width < 1 || depth < 1) throw ParseError("width and depth must be >= 1", header_line);
  if (tok.word("'special'") != "special") {
    throw ParseError("expected 'special' flag", tok.line());
  }
  const std::size_t flag = tok.count("special flag");
  if (flag > 1) throw ParseError("special flag must be 0 or 1", tok.line());
  std::vector<AffineLayer> layers;
  for (std::size_t l = 0; l <= depth; ++l) {
    const std::size_t rows = tok.count("row count");
    const std::size_t cols = tok.count("column count");
    const std::size_t want_rows = l == depth ? 1 : width;
    const std::size_t want_cols = l == 0 ? 1 : width;
    if (rows != want_rows || cols != want_cols) {
      throw ParseError("map " + std::to_string(l) + " must be " +
                           std::to_string(want_rows) + " x " + std::to_string(want_cols),
                       tok.line());
    }
    AffineLayer a = AffineLayer::zeros(rows, cols);
    for (double& w : a.weights) w = tok.real("weight");
    for (double& b : a.bias) b = tok.real("bias");
    layers.push_back(std::move(a));
  }
  const std::size_t last = tok.line();
  tok.expect_end();
  ReluNetwork net(std::move(layers));
  if (flag == 0) return net;
  try {
    return SpecialNetwork(std::move(net));
  } catch (const StructureError& e) {
    throw ParseError(std::string("special structure: ") + e.what(), last);
  }
}

Cpwl load_spline(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  return read_spline(in);
}

void save_spline(const std::filesystem::path& path, const Cpwl& f) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path.string());
  write_spline(out, f);
}

AnyNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  return read_network(in);
}

void save_network(const std::filesystem::path& path, const AnyNetwork& net) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path.string());
  write_network(out, net);
}

}  // namespace spline2relu

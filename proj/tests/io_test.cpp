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

#include <filesystem>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/errors.hpp"
#include "spline2relu/io.hpp"

namespace spline2relu {
namespace {

std::size_t parse_line(const std::string& text, bool network) {
  std::istringstream is(text);
  try {
    if (network) {
      (void)read_network(is);
    } else {
      (void)read_spline(is);
    }
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return 0;
}

TEST(SplineIo, RoundTripIsBitExact) {
  oracle::Rng rng(81);
  for (int i = 0; i < 20; ++i) {
    const Cpwl f = oracle::random_spline(rng, 1 + i);
    std::stringstream ss;
    write_spline(ss, f);
    const Cpwl g = read_spline(ss);
    ASSERT_EQ(g.breakpoints().size(), f.breakpoints().size());
    for (std::size_t j = 0; j < f.breakpoints().size(); ++j) {
      EXPECT_EQ(g.breakpoints()[j], f.breakpoints()[j]);
      EXPECT_EQ(g.values()[j], f.values()[j]);
    }
  }
}

TEST(SplineIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_line("3\n0 0\n0.5 abc\n1 0\n", false), 3u);
  EXPECT_EQ(parse_line("3\n0 0\n0.5 1\n0.4 0\n", false), 4u);
  EXPECT_EQ(parse_line("2\n0.1 0\n1 0\n", false), 2u);
  EXPECT_EQ(parse_line("2\n0 0\n0.9 0\n", false), 3u);
  EXPECT_EQ(parse_line("2\n0 0\n1 0\nextra\n", false), 4u);
  EXPECT_EQ(parse_line("3\n0 0\n1 0\n", false), 3u);
  EXPECT_EQ(parse_line("-2\n", false), 1u);
}

TEST(NetworkIo, RoundTripIsBitExact) {
  oracle::Rng rng(82);
  const ReluNetwork plain = oracle::random_network(rng, 3, 4);
  const SpecialNetwork special = compile_spline(oracle::random_spline(rng, 12), 5).net;
  for (const AnyNetwork& net : {AnyNetwork(plain), AnyNetwork(special)}) {
    std::stringstream ss;
    write_network(ss, net);
    const std::string first = ss.str();
    const AnyNetwork back = read_network(ss);
    EXPECT_EQ(back.index(), net.index());
    std::stringstream again;
    write_network(again, back);
    EXPECT_EQ(again.str(), first);
  }
}

TEST(NetworkIo, ErrorsCarryLineNumbers) {
  const std::string good =
      "1 1\n"
      "special 0\n"
      "1 1\n"
      "2\n"
      "0\n"
      "1 1\n"
      "1\n"
      "0\n";
  std::istringstream is(good);
  EXPECT_NO_THROW((void)read_network(is));
  EXPECT_EQ(parse_line("1 1\nspecial 2\n", true), 2u);
  EXPECT_EQ(parse_line("1 1\nspecial 0\n1 2\n", true), 3u);
  EXPECT_EQ(parse_line("1 1\nspecial 0\n1 1\nx\n", true), 4u);
  EXPECT_EQ(parse_line(good + "7\n", true), 9u);
  EXPECT_EQ(parse_line("1 1\nspecial 0\n1 1\n2\n0\n1 1\n1\n", true), 7u);
}

TEST(NetworkIo, SpecialFlagIsRevalidated) {
  std::string text = "4 1\nspecial 1\n4 1\n1\n1\n1\n0\n0 0 0 0\n1 4\n0 1 1 1\n0\n";
  std::istringstream is(text);
  EXPECT_TRUE(std::holds_alternative<SpecialNetwork>(read_network(is)));
  // Hidden channel 2 feeds the collation channel directly.
  text = "4 2\nspecial 1\n4 1\n1\n1\n1\n0\n0 0 0 0\n"
         "4 4\n1 0 0 0\n0 1 0 0\n0 0 1 1\n0 0 0 1\n0 0 0 0\n"
         "1 4\n0 0 0 1\n0\n";
  EXPECT_EQ(parse_line(text, true), 17u);
  std::istringstream plain(text.replace(text.find("special 1"), 9, "special 0"));
  EXPECT_TRUE(std::holds_alternative<ReluNetwork>(read_network(plain)));
}

TEST(FileIo, SaveAndLoad) {
  const auto dir = std::filesystem::temp_directory_path() / "spline2relu_io_test";
  std::filesystem::create_directories(dir);
  save_spline(dir / "hat.txt", hat());
  EXPECT_EQ(sup_diff(load_spline(dir / "hat.txt"), hat()), 0.0);
  save_network(dir / "hat.net", AnyNetwork(compile_spline(hat(), 4).net));
  EXPECT_TRUE(std::holds_alternative<SpecialNetwork>(load_network(dir / "hat.net")));
  EXPECT_THROW((void)load_spline(dir / "missing.txt"), ArgumentError);
  std::filesystem::remove_all(dir);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace spline2relu

// Copyright 2026 The cpqt Authors
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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cpqt/errors.hpp"
#include "cpqt_tools/experiments.hpp"

namespace cpqt::tools {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(Config, ParsesTomlSubset) {
  const Config c = Config::parse(
      "# comment\n"
      "omega = 20   # trailing\n"
      "eta = 10/11\n"
      "phi = \"pi/2\"\n"
      "etas = [0, 1, 0.5]\n"
      "name = 'jump'\n");
  EXPECT_DOUBLE_EQ(c.num("omega"), 20.0);
  EXPECT_DOUBLE_EQ(c.num("eta"), 10.0 / 11.0);
  EXPECT_DOUBLE_EQ(c.num("phi"), std::numbers::pi / 2);
  EXPECT_EQ(c.nums("etas"), (std::vector<double>{0.0, 1.0, 0.5}));
  EXPECT_EQ(c.str("name"), "jump");
  EXPECT_THROW(c.str("missing"), InvalidArgument);
  EXPECT_THROW(Config::parse("novalue\n"), InvalidArgument);
}

TEST(Config, Numbers) {
  EXPECT_DOUBLE_EQ(parse_number("1e-3"), 1e-3);
  EXPECT_DOUBLE_EQ(parse_number("0.5*pi"), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(parse_number("pi"), std::numbers::pi);
  EXPECT_THROW(parse_number("abc"), InvalidArgument);
  EXPECT_THROW(parse_number("1/0x"), InvalidArgument);
  Config c;
  c.set("n", "2.5");
  EXPECT_THROW(c.integer("n"), InvalidArgument);
  c.set_default("n", "3");
  EXPECT_DOUBLE_EQ(c.num("n"), 2.5);
}

TEST(Config, EchoIsSortedAndStable) {
  Config a = Config::parse("b = 2\na = 1\n");
  Config b = Config::parse("a = 1\nb = 2\n");
  EXPECT_EQ(a.echo(), b.echo());
  EXPECT_EQ(a.echo(), "a = 1\nb = 2\n");
}

TEST(Output, GitBlobHash) {
  // `printf 'hello\n' | git hash-object --stdin`
  EXPECT_EQ(git_blob_sha1("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST(Output, DoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02e23}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Output, CsvAndMeta) {
  const auto dir = std::filesystem::path("tools_test_out");
  std::filesystem::create_directories(dir);
  Config cfg = Config::parse("seed = 4\n");
  {
    CsvWriter w(dir / "t.csv", {"a", "b"}, "demo", cfg);
    w.row({1.0, 0.5});
    EXPECT_THROW(w.row({1.0}), Error);
  }
  EXPECT_EQ(slurp(dir / "t.csv"), "a,b\n1,0.5\n");
  const std::string meta = slurp(dir / "t.csv.meta");
  EXPECT_NE(meta.find("command = demo\n"), std::string::npos);
  EXPECT_NE(meta.find("config_sha1 = " + git_blob_sha1(cfg.echo())), std::string::npos);
  EXPECT_NE(meta.find("[config]\nseed = 4\n"), std::string::npos);
}

TEST(Commands, RegistryAndDefaults) {
  EXPECT_EQ(commands().size(), 8u);
  EXPECT_THROW(find_command("nope"), InvalidArgument);
  Config desk, full;
  apply_defaults("filter-check", desk, false);
  apply_defaults("filter-check", full, true);
  EXPECT_EQ(desk.integer("members"), 2000);
  EXPECT_EQ(full.integer("members"), 20000);
  EXPECT_DOUBLE_EQ(desk.num("omega"), 5.0);
}

TEST(Commands, ZeroDurationTrajectoryIsHeaderOnly) {
  RunContext ctx;
  ctx.out_dir = "tools_test_out/t0";
  Config cfg = Config::parse("t_final = 0\netas = [1]\n");
  const RunSummary s = run_command("trajectory", cfg, ctx);
  const std::string csv = slurp(ctx.out_dir / "trajectory_eta1.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
  EXPECT_EQ(csv.rfind("t,", 0), 0u);
  EXPECT_TRUE(std::filesystem::exists(ctx.out_dir / "trajectory_summary.json"));
}

TEST(Commands, SummaryJson) {
  RunContext ctx;
  ctx.out_dir = "tools_test_out/conv";
  const RunSummary s = run_command("convergence", Config{}, ctx);
  EXPECT_TRUE(s.pass());
  const auto j = nlohmann::json::parse(slurp(ctx.out_dir / "convergence_summary.json"));
  EXPECT_EQ(j["experiment"], "convergence");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_FALSE(j["checks"].empty());
}

TEST(Commands, BadConfigValuesAreRejected) {
  RunContext ctx;
  ctx.out_dir = "tools_test_out/bad";
  EXPECT_THROW(run_command("convergence", Config::parse("dts = [1e-2]\n"), ctx), Error);
  EXPECT_THROW(run_command("effect-check", Config::parse("observed = both\n"), ctx), Error);
  EXPECT_THROW(run_command("trajectory", Config::parse("etas = [2]\n"), ctx), Error);
}

}  // namespace
}  // namespace cpqt::tools

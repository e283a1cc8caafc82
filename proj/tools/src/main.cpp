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

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpqt/errors.hpp"
#include "cpqt_tools/experiments.hpp"

namespace {

int run(const std::string& name, const std::string& config_path, const std::vector<std::string>& sets,
        const std::string* seed, const cpqt::tools::RunContext& ctx) {
  using namespace cpqt::tools;
  Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw cpqt::InvalidArgument("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (seed) cfg.set("seed", *seed);
  const RunSummary s = run_command(name, cfg, ctx);
  for (const auto& c : s.checks) {
    std::printf("%s %s = %.6g (%s %.6g)%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                c.comparison.c_str(), c.threshold, c.note.empty() ? "" : "  # ",
                c.note.c_str());
  }
  std::printf("%s: %s in %.2f s\n", name.c_str(), s.pass() ? "all checks pass" : "CHECKS FAILED",
              s.wall_seconds);
  return s.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpqt: quantum trajectories, filtering and smoothing experiments"};
  app.require_subcommand(1);
  std::string config_path, seed, out_dir = "out";
  std::vector<std::string> sets;
  unsigned workers = 1;
  bool full_scale = false;
  for (const auto& cmd : cpqt::tools::commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--workers", workers, "worker threads for ensembles")->check(CLI::PositiveNumber);
    sub->add_flag("--full-scale", full_scale, "use the full ensemble sizes");
    sub->add_option("--set", sets, "override a config key (key=value), repeatable");
  }
  CLI11_PARSE(app, argc, argv);

  cpqt::tools::RunContext ctx;
  ctx.out_dir = out_dir;
  ctx.workers = workers;
  ctx.full_scale = full_scale;
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return run(name, config_path, sets, seed.empty() ? nullptr : &seed, ctx);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cpqt %s: %s\n", name.c_str(), e.what());
    return 2;
  }
}

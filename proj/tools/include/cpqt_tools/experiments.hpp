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

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "cpqt/system.hpp"
#include "cpqt_tools/config.hpp"
#include "cpqt_tools/output.hpp"

namespace cpqt::tools {

struct RunContext {
  std::filesystem::path out_dir = "out";
  unsigned workers = 1;
  bool full_scale = false;
};

using CommandFn = RunSummary (*)(Config, const RunContext&);

struct Command {
  std::string name;
  std::string help;
  CommandFn run;
};

const std::vector<Command>& commands();
const Command& find_command(const std::string& name);

/// Fills unset keys with the command's desk-scale defaults (and full-scale
/// ensemble sizes when requested).
void apply_defaults(const std::string& command, Config& cfg, bool full_scale);

/// Runs a command, writes <out>/<command>_summary.json and returns the summary.
RunSummary run_command(const std::string& command, Config cfg, const RunContext& ctx);

/// Model parameters from the common keys omega, upsilon, eta, phi, lambda,
/// dt, t_final, seed, initial, diffusive_sampling.
QubitModelParams model_params(const Config& cfg);

RunSummary cmd_trajectory(Config cfg, const RunContext& ctx);
RunSummary cmd_purity_compare(Config cfg, const RunContext& ctx);
RunSummary cmd_me_check(Config cfg, const RunContext& ctx);
RunSummary cmd_filter_check(Config cfg, const RunContext& ctx);
RunSummary cmd_effect_check(Config cfg, const RunContext& ctx);
RunSummary cmd_smooth_single(Config cfg, const RunContext& ctx);
RunSummary cmd_jump_ensemble(Config cfg, const RunContext& ctx);
RunSummary cmd_convergence(Config cfg, const RunContext& ctx);

/// Per-step Bloch/matrix columns shared by several CSVs.
std::vector<double> state_columns(const Operator& rho);
extern const std::vector<std::string> kStateColumnNames;

/// Short label for a parameter value in a file name ("0.5" -> "0.5", pi/2 -> "1.5707963267948966").
std::string label(double v);

}  // namespace cpqt::tools

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

#include <chrono>
#include <cmath>

#include "cpqt/errors.hpp"
#include "cpqt/metrics.hpp"
#include "cpqt_tools/experiments.hpp"

namespace cpqt::tools {

const std::vector<std::string> kStateColumnNames = {"x",  "yb", "z",     "purity",
                                                    "ee", "gg", "re_eg", "im_eg"};

std::vector<double> state_columns(const Operator& rho) {
  const BlochVector b = bloch(rho);
  return {b.x, b.y, b.z, purity(rho), rho(0, 0).real(), rho(1, 1).real(), rho(0, 1).real(),
          rho(0, 1).imag()};
}

std::string label(double v) {
  std::string s = format_double(v);
  for (char& c : s) {
    if (c == '-') c = 'm';
  }
  return s;
}

QubitModelParams model_params(const Config& cfg) {
  QubitModelParams p;
  p.omega = cfg.num("omega");
  p.upsilon = cfg.num("upsilon");
  p.eta = cfg.num("eta");
  p.phi = cfg.num("phi");
  p.lambda = cfg.num("lambda");
  p.dt = cfg.num("dt");
  p.t_final = cfg.num("t_final");
  p.seed = cfg.uinteger("seed");
  p.initial = cfg.str("initial");
  const std::string sampling = cfg.str("diffusive_sampling");
  if (sampling == "cpqt") {
    p.diffusive_sampling = SchemeOrder::CPQT;
  } else if (sampling == "euler") {
    p.diffusive_sampling = SchemeOrder::Euler;
  } else {
    throw InvalidArgument("diffusive_sampling must be 'cpqt' or 'euler'");
  }
  return p;
}

const std::vector<Command>& commands() {
  static const std::vector<Command> list = {
      {"trajectory", "single true trajectories with records and Bloch coordinates", cmd_trajectory},
      {"purity-compare", "Euler versus CPQT purity traces", cmd_purity_compare},
      {"me-check", "ensemble and unconditional map versus the exact master equation", cmd_me_check},
      {"filter-check", "filtered state versus weighted hypothetical ensemble, N_eff", cmd_filter_check},
      {"effect-check", "constancy of Tr[rho_F E] under filtering and retro-filtering", cmd_effect_check},
      {"smooth-single", "filtered, smoothed and true states for one record pair", cmd_smooth_single},
      {"jump-ensemble", "purity and fidelity averaged around single unobserved jumps", cmd_jump_ensemble},
      {"convergence", "completeness residual order sweeps", cmd_convergence},
  };
  return list;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw InvalidArgument("unknown command '" + name + "'");
}

void apply_defaults(const std::string& command, Config& cfg, bool full_scale) {
  auto def = [&](const char* k, const char* v) { cfg.set_default(k, v); };
  if (full_scale) {
    if (command == "filter-check") def("members", "20000");
    if (command == "smooth-single") def("members", "10000");
    if (command == "jump-ensemble") {
      def("pairs", "5000");
      def("members", "10000");
    }
  }
  if (command == "trajectory") {
    def("etas", "0, 1");
  } else if (command == "purity-compare") {
    def("etas", "0, 1, 0.5");
    def("seeds", "10");
    def("euler_min_seeds", "8");
  } else if (command == "me-check") {
    def("phis", "pi/2, 0");
    def("trajectories", "500");
    def("stride", "10");
    def("map_tolerance", "5e-5");
    def("z_bound", "4");
    def("min_fraction", "0.99");
  } else if (command == "filter-check") {
    def("omega", "5");
    def("eta", "0.5");
    def("phi", "pi/2");
    def("members", "2000");
    def("stride", "10");
    def("unobserved", "jump, diffusive");
    def("sigma_bound", "3");
    def("min_fraction", "0.99");
  } else if (command == "effect-check") {
    def("omega", "5");
    def("phi", "pi/2");
    def("observed", "diffusive, jump");
    def("drift_tolerance", "1e-10");
  } else if (command == "smooth-single") {
    def("omega", "20");
    def("eta", "10/11");
    def("phi", "pi/2");
    def("members", "2000");
    def("record", "jump");
    def("max_attempts", "5000");
    def("stride", "1");
  } else if (command == "jump-ensemble") {
    def("omega", "20");
    def("eta", "10/11");
    def("phi", "pi/2");
    def("pairs", "500");
    def("members", "2000");
    def("window_start", "2");
    def("window_end", "4");
    def("guard", "1");
    def("pre_window", "0.5");
    def("post_window", "1");
    def("min_selected", "30");
    def("alignment", "aligned");
  } else if (command == "convergence") {
    def("dts", "1e-2, 5e-3, 2.5e-3");
    def("coupling", "1");
    def("lambda", "1");
  }
  def("omega", "3");
  def("upsilon", "1");
  def("eta", "0.5");
  def("phi", "0");
  def("lambda", "0");
  def("dt", "5e-3");
  def("t_final", "5");
  def("seed", "1");
  def("initial", "g");
  def("diffusive_sampling", "cpqt");
}

RunSummary run_command(const std::string& name, Config cfg, const RunContext& ctx) {
  const Command& cmd = find_command(name);
  apply_defaults(name, cfg, ctx.full_scale);
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary = cmd.run(cfg, ctx);
  summary.experiment = name;
  summary.seed = cfg.uinteger("seed");
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  summary.info["config_sha1"] = git_blob_sha1(cfg.echo());
  write_summary(ctx.out_dir / (name + "_summary.json"), summary);
  return summary;
}

}  // namespace cpqt::tools

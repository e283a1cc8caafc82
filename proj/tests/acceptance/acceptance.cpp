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

// Acceptance gate: one PASS/FAIL line per criterion. Criteria backed by a
// cpqt command run it at desk scale with its default config.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpqt/channels.hpp"
#include "cpqt/conditioned_model.hpp"
#include "cpqt/gaussian_sufficiency.hpp"
#include "cpqt/superoperators.hpp"
#include "cpqt_tools/experiments.hpp"

namespace fs = std::filesystem;
using namespace cpqt;
using namespace cpqt::tools;

namespace {

fs::path g_out = "acceptance_out";

void line(bool pass, const std::string& what) {
  std::printf("  %s %s\n", pass ? "ok  " : "FAIL", what.c_str());
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool run_and_report(const std::string& command, Config cfg = {}) {
  RunContext ctx;
  ctx.out_dir = g_out / command;
  const RunSummary s = run_command(command, std::move(cfg), ctx);
  for (const auto& c : s.checks) {
    line(c.pass, c.name + " = " + fmt("%.6g", c.value) + " (" + c.comparison + " " +
                     fmt("%.6g", c.threshold) + ")");
  }
  std::printf("  %s ran in %.1f s\n", command.c_str(), s.wall_seconds);
  return s.pass();
}

bool purity_exactness() { return run_and_report("purity-compare"); }

bool completeness_order() {
  bool ok = run_and_report("convergence");
  const double r =
      completeness_residual(JumpChannel{qubit::sigma_minus(), 1.0}, 5e-3, SchemeOrder::Euler);
  const bool close = std::abs(r / 1.875e-5 - 1.0) <= 0.01;
  line(close, fmt("euler jump residual at dt=5e-3 = %.6g (1.875e-5 within 1%%)", r));
  return ok && close;
}

bool master_equation_recovery() { return run_and_report("me-check"); }

Operator random_state(std::mt19937_64& g) {
  std::normal_distribution<double> d;
  Operator a(2, 2);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) a(i, j) = cplx(d(g), d(g));
  Operator rho = a * a.adjoint();
  return rho / rho.trace();
}

bool moment_oracle() {
  std::mt19937_64 g(2026);
  const double dt = 5e-3;
  double worst_mean = 0.0, worst_var = 0.0;
  for (double phi : {0.0, std::numbers::pi / 2}) {
    for (int i = 0; i < 20; ++i) {
      const Operator rho = random_state(g);
      const DiffusiveChannel ch{qubit::sigma_minus(), phi};
      const auto q = quadrature_moments(ch, rho, dt);
      const auto f = actual_diffusive_moments(ch, rho, dt, SchemeOrder::CPQT);
      worst_mean = std::max(worst_mean, std::abs(f.mean - q.mean) / std::abs(q.mean));
      worst_var = std::max(worst_var, std::abs(f.variance - q.variance) / q.variance);
    }
  }
  const bool mean_ok = worst_mean <= 1e-6, var_ok = worst_var <= 1e-6;
  line(mean_ok, fmt("max relative error of mu over 40 states = %.3g (<= 1e-6)", worst_mean));
  line(var_ok, fmt("max relative error of sigma^2 over 40 states = %.3g (<= 1e-6)", worst_var));
  // Excess kurtosis for |e>, b = sigma_-, <b^dag b> = 1.
  const Operator e = qubit::excited_projector();
  bool kurt_ok = true;
  for (double small : {1e-3, 5e-4}) {
    const auto q = quadrature_moments(DiffusiveChannel{qubit::sigma_minus(), 0.0}, e, small);
    const double target = -24.0 * small;
    const bool ok = std::abs(q.excess_kurtosis / target - 1.0) <= 0.05;
    kurt_ok = kurt_ok && ok;
    line(ok, fmt("dt=%.1e: quadrature gamma2-3 = %.4g vs -24<b^dag b>dt = %.4g (5%%)", small,
                 q.excess_kurtosis, target));
  }
  return mean_ok && var_ok && kurt_ok;
}

bool filter_consistency() { return run_and_report("filter-check"); }

bool effect_pairing() {
  bool ok = run_and_report("effect-check");
  std::mt19937_64 g(7);
  std::normal_distribution<double> d;
  auto rand_op = [&] {
    Operator m(2, 2);
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 2; ++j) m(i, j) = cplx(d(g), d(g));
    return m;
  };
  double worst = 0.0;
  for (bool jump_seen : {true, false}) {
    QubitModelParams p;
    p.omega = 5.0;
    p.phi = std::numbers::pi / 2;
    p.jump_role = jump_seen ? ChannelRole::Observed : ChannelRole::Unobserved;
    p.diffusive_role = jump_seen ? ChannelRole::Unobserved : ChannelRole::Observed;
    const PreparedSpec prepared(make_qubit_model(p));
    const Trajectory truth = run_trajectory(prepared, Mode::True);
    const ConditionedModel model(prepared, truth.records);
    for (Index k = 0; k < model.steps(); ++k) {
      // Hermitian inputs, the domain of states and effects.
      const Operator rho = hermitize(rand_op()), eff = hermitize(rand_op());
      const cplx lhs = trace_product(eff, model.forward(k, rho));
      const cplx rhs = trace_product(model.adjoint(k, eff), rho);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  }
  const bool pair_ok = worst <= 1e-13;
  line(pair_ok, fmt("random-input |Tr[E F(rho)] - Tr[F^dag(E) rho]| (relative) = %.3g (<= 1e-13)",
                    worst));
  return ok && pair_ok;
}

bool jump_anticipation() { return run_and_report("jump-ensemble"); }

// Small configs so every command runs in seconds.
const std::vector<std::pair<std::string, std::string>> kSmallConfigs = {
    {"trajectory", "t_final = 2\n"},
    {"purity-compare", "t_final = 1\nseeds = 3\neuler_min_seeds = 1\n"},
    {"me-check", "t_final = 1\ntrajectories = 40\n"},
    {"filter-check", "t_final = 1\nmembers = 100\n"},
    {"effect-check", "t_final = 1\n"},
    {"smooth-single", "t_final = 2\nmembers = 100\n"},
    {"jump-ensemble", "pairs = 80\nmembers = 60\nmin_selected = 1\n"},
    {"convergence", ""},
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool determinism() {
  bool all = true;
  for (const auto& [command, text] : kSmallConfigs) {
    std::vector<std::set<fs::path>> files(2);
    for (int run = 0; run < 2; ++run) {
      RunContext ctx;
      ctx.out_dir = g_out / "determinism" / ("run" + std::to_string(run)) / command;
      fs::remove_all(ctx.out_dir);
      run_command(command, Config::parse(text), ctx);
      for (const auto& entry : fs::directory_iterator(ctx.out_dir)) {
        const auto ext = entry.path().extension();
        if (ext == ".csv" || ext == ".meta") files[run].insert(entry.path().filename());
      }
    }
    bool same = files[0] == files[1] && !files[0].empty();
    for (const auto& name : files[0]) {
      const auto base = g_out / "determinism";
      same = same && slurp(base / "run0" / command / name) == slurp(base / "run1" / command / name);
    }
    line(same, command + ": " + std::to_string(files[0].size()) + " csv/meta files byte-identical");
    all = all && same;
  }
  return all;
}

const std::vector<std::pair<std::string, std::function<bool()>>> kCriteria = {
    {"purity_exactness", purity_exactness},
    {"completeness_order", completeness_order},
    {"master_equation_recovery", master_equation_recovery},
    {"moment_oracle", moment_oracle},
    {"filter_consistency", filter_consistency},
    {"effect_pairing", effect_pairing},
    {"jump_anticipation", jump_anticipation},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpqt acceptance criteria"};
  std::vector<std::string> selected;
  std::string out = g_out.string();
  app.add_option("--criterion", selected, "criterion to run (default: all)");
  app.add_option("--out", out, "scratch output directory")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  g_out = out;

  int failures = 0;
  bool any = false;
  for (const auto& [name, fn] : kCriteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), name) == selected.end()) {
      continue;
    }
    any = true;
    std::printf("%s\n", name.c_str());
    bool pass = false;
    try {
      pass = fn();
    } catch (const std::exception& e) {
      std::printf("  error: %s\n", e.what());
    }
    std::printf("%s %s\n", pass ? "PASS" : "FAIL", name.c_str());
    std::fflush(stdout);
    failures += !pass;
  }
  if (!any) {
    std::fprintf(stderr, "no such criterion\n");
    return 2;
  }
  return failures == 0 ? 0 : 1;
}

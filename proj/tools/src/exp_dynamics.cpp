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

#include <array>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "cpqt/errors.hpp"
#include "cpqt/gaussian_sufficiency.hpp"
#include "cpqt/metrics.hpp"
#include "cpqt/parallel.hpp"
#include "cpqt/propagators.hpp"
#include "cpqt/trajectory.hpp"
#include "cpqt_tools/experiments.hpp"

namespace cpqt::tools {
namespace {

QubitModelParams with_eta(QubitModelParams p, double eta) {
  p.eta = eta;
  return p;
}

double max_purity_deviation(const Trajectory& t) {
  double worst = 0.0;
  for (const auto& s : t.states) worst = std::max(worst, std::abs(purity(s) - 1.0));
  return worst;
}

double max_purity(const Trajectory& t) {
  double worst = -INFINITY;
  for (const auto& s : t.states) {
    const double p = purity(s);
    worst = std::max(worst, std::isnan(p) ? INFINITY : p);
  }
  return worst;
}

}  // namespace

RunSummary cmd_trajectory(Config cfg, const RunContext& ctx) {
  RunSummary summary;
  const auto base = model_params(cfg);
  const bool pure_start = std::abs(purity(qubit_state(base.initial)) - 1.0) < 1e-12;
  for (double eta : cfg.nums("etas")) {
    const PreparedSpec p(make_qubit_model(with_eta(base, eta)));
    const Trajectory t = run_trajectory(p, Mode::True);
    std::vector<std::string> cols = {"t", "dn", "y"};
    cols.insert(cols.end(), kStateColumnNames.begin(), kStateColumnNames.end());
    CsvWriter csv(ctx.out_dir / ("trajectory_eta" + label(eta) + ".csv"), cols, "trajectory", cfg);
    double trace_dev = 0.0;
    int jumps = 0;
    for (Index k = 1; k <= p.steps(); ++k) {
      const Operator& rho = t.states[k].matrix();
      const double dn = t.records[kJumpChannel].values[k - 1];
      jumps += dn == 1.0;
      std::vector<double> row = {k * p.dt(), dn, t.records[kDiffusiveChannel].values[k - 1]};
      const auto sc = state_columns(rho);
      row.insert(row.end(), sc.begin(), sc.end());
      csv.row(row);
      trace_dev = std::max(trace_dev, std::abs(rho.trace().real() - 1.0));
    }
    csv.close();
    const std::string tag = "eta=" + format_double(eta);
    if (pure_start) {
      summary.checks.push_back(
          make_check("max_abs_purity_minus_one[" + tag + "]", max_purity_deviation(t), "<=", 1e-12));
    }
    summary.checks.push_back(make_check("max_abs_trace_minus_one[" + tag + "]", trace_dev, "<=", 1e-12));
    summary.info["jumps"][tag] = jumps;
  }
  return summary;
}

RunSummary cmd_purity_compare(Config cfg, const RunContext& ctx) {
  RunSummary summary;
  const auto base = model_params(cfg);
  const auto seeds = cfg.integer("seeds");
  const auto need = cfg.integer("euler_min_seeds");
  double cpqt_worst = 0.0;
  for (double eta : cfg.nums("etas")) {
    std::int64_t above = 0;
    double euler_max = -INFINITY;
    for (std::int64_t s = 0; s < seeds; ++s) {
      auto params = with_eta(base, eta);
      params.seed = base.seed + static_cast<std::uint64_t>(s);
      const PreparedSpec p(make_qubit_model(params));
      const Trajectory cpqt = run_trajectory(p, Mode::True);
      const Trajectory euler = run_trajectory(p, Mode::Euler);
      cpqt_worst = std::max(cpqt_worst, max_purity_deviation(cpqt));
      const double em = max_purity(euler);
      euler_max = std::max(euler_max, em);
      above += em > 1.0 + 1e-12;
      if (s == 0) {
        CsvWriter csv(ctx.out_dir / ("purity_eta" + label(eta) + ".csv"),
                      {"t", "purity_cpqt", "purity_euler"}, "purity-compare", cfg);
        for (Index k = 0; k <= p.steps(); ++k) {
          csv.row({k * p.dt(), purity(cpqt.states[k]), purity(euler.states[k])});
        }
        csv.close();
      }
    }
    const std::string tag = "eta=" + format_double(eta);
    summary.info["euler_max_purity"][tag] = euler_max;
    summary.checks.push_back(make_check("euler_seeds_with_purity_above_one[" + tag + "]",
                                        static_cast<double>(above), ">=", static_cast<double>(need),
                                        "out of " + std::to_string(seeds) + " seeds"));
  }
  summary.checks.push_back(make_check("cpqt_max_abs_purity_minus_one", cpqt_worst, "<=", 1e-12));
  return summary;
}

RunSummary cmd_me_check(Config cfg, const RunContext& ctx) {
  RunSummary summary;
  const auto base = model_params(cfg);
  const auto m = static_cast<std::size_t>(cfg.integer("trajectories"));
  const Index stride = cfg.integer("stride");
  const double map_tol = cfg.num("map_tolerance");
  const double z_bound = cfg.num("z_bound");
  const double min_fraction = cfg.num("min_fraction");
  if (m < 2) throw InvalidArgument("me-check: need at least two trajectories");
  if (stride < 1) throw InvalidArgument("me-check: stride must be >= 1");

  using Comps = std::array<double, 4>;
  auto comps = [](const Operator& r) -> Comps {
    return {r(0, 0).real(), r(1, 1).real(), r(0, 1).real(), r(0, 1).imag()};
  };
  const std::array<std::string, 4> names = {"ee", "gg", "re_eg", "im_eg"};

  for (double phi : cfg.nums("phis")) {
    auto params = base;
    params.phi = phi;
    const PreparedSpec p(make_qubit_model(params));
    const Index steps = p.steps();
    const SuperOperator one_step = liouvillian_exponential(
        liouvillian(p.spec().hamiltonian, p.spec().lindblads()), p.dt());

    std::vector<Comps> exact, map;
    Operator re = p.spec().initial.matrix();
    Operator rm = re;
    double map_dev = 0.0, exact_re = 0.0;
    for (Index k = 0; k <= steps; ++k) {
      if (k > 0) {
        re = hermitize(apply_superoperator(one_step, re));
        rm = unconditioned_step(rm, p);
      }
      map_dev = std::max(map_dev, max_abs(re - rm));
      exact_re = std::max(exact_re, std::abs(re(0, 1).real()));
      if (k % stride == 0 || k == steps) {
        exact.push_back(comps(re));
        map.push_back(comps(rm));
      }
    }

    // Per-trajectory strided components, reduced in index order.
    std::vector<std::vector<Comps>> per(m);
    std::vector<double> traj_re(m, 0.0);
    parallel_for(m, ctx.workers, [&](std::size_t i) {
      RandomStream rng = trajectory_stream(p, Mode::True, i);
      Operator rho = p.spec().initial.matrix();
      StepOutcomes out;
      per[i].push_back(comps(rho));
      for (Index k = 0; k < steps; ++k) {
        rho = true_step(rho, p, rng, out);
        traj_re[i] = std::max(traj_re[i], std::abs(rho(0, 1).real()));
        if ((k + 1) % stride == 0 || k + 1 == steps) per[i].push_back(comps(rho));
      }
    });
    const std::size_t slots = exact.size();
    std::vector<Comps> mean(slots, Comps{}), se(slots, Comps{});
    for (std::size_t s = 0; s < slots; ++s) {
      for (int c = 0; c < 4; ++c) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) sum += per[i][s][c];
        const double mu = sum / m;
        double ss = 0.0;
        for (std::size_t i = 0; i < m; ++i) ss += (per[i][s][c] - mu) * (per[i][s][c] - mu);
        mean[s][c] = mu;
        se[s][c] = std::sqrt(ss / (m - 1) / m);
      }
    }
    std::vector<std::string> cols = {"t"};
    for (const auto& n : names) {
      for (const char* kind : {"exact_", "map_", "mean_", "se_"}) cols.push_back(kind + n);
    }
    CsvWriter csv(ctx.out_dir / ("me_check_phi" + label(phi) + ".csv"), cols, "me-check", cfg);
    std::size_t inside = 0, total = 0;
    double worst_z = 0.0;
    for (std::size_t s = 0; s < slots; ++s) {
      const Index k = std::min<Index>(static_cast<Index>(s) * stride, steps);
      std::vector<double> row = {k * p.dt()};
      for (int c = 0; c < 4; ++c) {
        row.insert(row.end(), {exact[s][c], map[s][c], mean[s][c], se[s][c]});
        const double dev = std::abs(mean[s][c] - exact[s][c]);
        const bool ok = se[s][c] > 0.0 ? dev <= z_bound * se[s][c] : dev <= 1e-12;
        if (se[s][c] > 0.0) worst_z = std::max(worst_z, dev / se[s][c]);
        inside += ok;
        ++total;
      }
      csv.row(row);
    }
    csv.close();
    const std::string tag = "phi=" + format_double(phi);
    summary.checks.push_back(make_check("map_vs_exact_max_abs[" + tag + "]", map_dev, "<=", map_tol));
    summary.checks.push_back(make_check("ensemble_fraction_within_z_bound[" + tag + "]",
                                        static_cast<double>(inside) / total, ">=", min_fraction));
    summary.info["max_standardized_deviation"][tag] = worst_z;
    if (std::abs(phi - std::numbers::pi / 2) < 1e-12) {
      summary.checks.push_back(make_check("exact_max_abs_re_eg[" + tag + "]", exact_re, "<=", 1e-12));
      double tr = 0.0;
      for (double v : traj_re) tr = std::max(tr, v);
      summary.checks.push_back(make_check("trajectory_max_abs_re_eg[" + tag + "]", tr, "<=", 1e-12));
    }
  }
  return summary;
}

RunSummary cmd_convergence(Config cfg, const RunContext& ctx) {
  RunSummary summary;
  const auto dts = cfg.nums("dts");
  if (dts.size() < 3) {
    throw InvalidArgument("convergence: at least three dt values are needed to fit an exponent");
  }
  for (std::size_t i = 1; i < dts.size(); ++i) {
    if (!(dts[i] < dts[i - 1])) throw InvalidArgument("convergence: dts must be decreasing");
  }
  const double g = cfg.num("coupling");
  const double lambda = cfg.num("lambda");
  const double phi = cfg.num("phi");
  const Operator a = std::sqrt(g) * qubit::sigma_minus();
  const JumpChannel jc{a, lambda};
  const DiffusiveChannel dc{a, phi};

  // Local error of one unconditional step against exp(L dt), from |+>.
  const QubitModelParams base = model_params(cfg);
  const Operator plus = qubit_state("+").matrix();

  std::vector<double> jc3, je2, dc3, de2, local;
  CsvWriter csv(ctx.out_dir / "convergence.csv",
                {"dt", "jump_cpqt", "jump_euler", "diffusive_cpqt", "diffusive_euler",
                 "unconditional_local_error"},
                "convergence", cfg);
  for (double dt : dts) {
    jc3.push_back(completeness_residual(jc, dt, SchemeOrder::CPQT));
    je2.push_back(completeness_residual(jc, dt, SchemeOrder::Euler));
    dc3.push_back(completeness_residual(dc, dt, SchemeOrder::CPQT));
    de2.push_back(completeness_residual(dc, dt, SchemeOrder::Euler));
    auto params = base;
    params.dt = dt;
    params.t_final = dt;
    const PreparedSpec p(make_qubit_model(params));
    const SuperOperator e =
        liouvillian_exponential(liouvillian(p.spec().hamiltonian, p.spec().lindblads()), dt);
    local.push_back(max_abs(unconditioned_step(plus, p) - apply_superoperator(e, plus)));
    csv.row({dt, jc3.back(), je2.back(), dc3.back(), de2.back(), local.back()});
  }
  csv.close();

  auto exponent_check = [&](const std::string& name, const std::vector<double>& r, double expect) {
    const bool zero = std::all_of(r.begin(), r.end(), [](double v) { return v < 1e-300; });
    if (zero) {
      summary.checks.push_back(make_check(name + "_residual_max", 0.0, "<=", 0.0, "all residuals vanish"));
      return;
    }
    const double slope = loglog_slope(dts, r);
    summary.checks.push_back(make_check(name + "_exponent_low", slope, ">=", expect - 0.2));
    summary.checks.push_back(make_check(name + "_exponent_high", slope, "<=", expect + 0.2));
  };
  exponent_check("jump_cpqt", jc3, 3.0);
  exponent_check("jump_euler", je2, 2.0);
  exponent_check("diffusive_cpqt", dc3, 3.0);
  exponent_check("diffusive_euler", de2, 2.0);

  // Closed form dt^2 || lambda (c^dag c - lambda) + (c^dag c - lambda)^2 / 4 ||.
  const double dt_ref = 5e-3;
  Operator k = a.adjoint() * a;
  k.diagonal().array() -= lambda;
  const double closed = dt_ref * dt_ref * spectral_norm(lambda * k + 0.25 * (k * k));
  const double measured = completeness_residual(jc, dt_ref, SchemeOrder::Euler);
  const double rel = closed > 0.0 ? std::abs(measured - closed) / closed : std::abs(measured);
  summary.checks.push_back(make_check("euler_jump_residual_relative_error_dt5e-3", rel, "<=", 0.01));
  summary.info["euler_jump_residual_dt5e-3"] = measured;
  summary.info["euler_jump_residual_closed_form"] = closed;
  const bool local_zero = std::all_of(local.begin(), local.end(), [](double v) { return v < 1e-300; });
  summary.info["unconditional_local_error_exponent"] = local_zero ? 0.0 : loglog_slope(dts, local);
  return summary;
}

}  // namespace cpqt::tools

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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "cpqt/errors.hpp"
#include "cpqt/estimation.hpp"
#include "cpqt/metrics.hpp"
#include "cpqt_tools/experiments.hpp"

namespace cpqt::tools {
namespace {

// One observed/unobserved record pair drawn from the true (fully monitored)
// dynamics, with the estimation spec that assigns the roles.
struct RecordPair {
  Trajectory truth;
  SystemSpec estimation;
};

RecordPair make_pair(QubitModelParams params, ChannelRole jump_role, ChannelRole diffusive_role,
                     std::uint64_t index) {
  params.jump_role = jump_role;
  params.diffusive_role = diffusive_role;
  SystemSpec spec = make_qubit_model(params);
  const PreparedSpec p(spec);
  return {run_trajectory(p, Mode::True, RunInputs{nullptr, index, 1}), spec};
}

std::vector<Index> jump_steps(const Trajectory& t) {
  std::vector<Index> out;
  const auto& v = t.records[kJumpChannel].values;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 1.0) out.push_back(static_cast<Index>(k));
  }
  return out;
}

// Filter, retro-filter and stream the hypothetical ensemble of one pair.
struct Estimates {
  FilteredTrajectory filtered;
  EnsembleSummary ensemble;
};

Estimates estimate(const RecordPair& pair, std::size_t members, Index stride, unsigned workers) {
  const ConditionedModel model(PreparedSpec(pair.estimation), pair.truth.records);
  Estimates e;
  e.filtered = filter(model);
  const EffectTrajectory effects = retrofilter(model);
  const HypotheticalPlan plan(model, e.filtered);
  e.ensemble = summarize_ensemble(plan, &effects, EnsembleOptions{members, stride, workers});
  return e;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double se_of(const std::vector<double>& v) {
  const double mu = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

double slope_of(const std::vector<double>& t, const std::vector<double>& y) {
  const double mt = mean_of(t), my = mean_of(y);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    num += (t[i] - mt) * (y[i] - my);
    den += (t[i] - mt) * (t[i] - mt);
  }
  return num / den;
}

ChannelRole role_of(bool observed) {
  return observed ? ChannelRole::Observed : ChannelRole::Unobserved;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

}  // namespace

RunSummary cmd_filter_check(Config cfg, const RunContext& ctx) {
  RunSummary summary;
  const auto params = model_params(cfg);
  const auto members = static_cast<std::size_t>(cfg.integer("members"));
  const Index stride = cfg.integer("stride");
  const double bound = cfg.num("sigma_bound");
  const double min_fraction = cfg.num("min_fraction");
  std::map<std::string, double> mean_neff;
  for (const auto& which : words(cfg.str("unobserved"))) {
    if (which != "jump" && which != "diffusive") {
      throw InvalidArgument("filter-check: unobserved must list 'jump' and/or 'diffusive'");
    }
    const bool jump_hidden = which == "jump";
    const RecordPair pair = make_pair(params, role_of(!jump_hidden), role_of(jump_hidden), 0);
    const ConditionedModel model(PreparedSpec(pair.estimation), pair.truth.records);
    const FilteredTrajectory filtered = filter(model);
    const HypotheticalPlan plan(model, filtered);
    const EnsembleSummary ens =
        summarize_ensemble(plan, nullptr, EnsembleOptions{members, stride, ctx.workers});
    const ConsistencyTrace trace = filter_consistency(ens, filtered);

    CsvWriter csv(ctx.out_dir / ("filter_check_unobserved_" + which + ".csv"),
                  {"t", "z_filter", "z_ensemble", "dz", "se", "n_eff", "n_eff_fraction"},
                  "filter-check", cfg);
    std::size_t inside = 0;
    double neff_sum = 0.0;
    const double dt = model.prepared().dt();
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      const Index k = trace.steps[i];
      const double zf = filtered.states[k](0, 0).real() - filtered.states[k](1, 1).real();
      csv.row({k * dt, zf, zf + trace.dz[i], trace.dz[i], trace.se[i], trace.n_eff[i],
               trace.n_eff[i] / members});
      const bool ok = trace.se[i] > 0.0 ? std::abs(trace.dz[i]) <= bound * trace.se[i]
                                        : std::abs(trace.dz[i]) <= 1e-12;
      inside += ok;
      neff_sum += trace.n_eff[i] / members;
    }
    csv.close();
    const std::string tag = "unobserved=" + which;
    summary.checks.push_back(make_check("fraction_dz_within_bound[" + tag + "]",
                                        static_cast<double>(inside) / trace.steps.size(), ">=",
                                        min_fraction));
    summary.checks.push_back(make_check("n_eff_t0_relative_error[" + tag + "]",
                                        std::abs(trace.n_eff.front() / members - 1.0), "<=", 1e-12));
    mean_neff[which] = neff_sum / trace.steps.size();
    summary.info["mean_n_eff_fraction"][which] = mean_neff[which];
    summary.info["final_n_eff"][which] = trace.n_eff.back();
  }
  if (mean_neff.count("jump") && mean_neff.count("diffusive")) {
    summary.checks.push_back(make_check("n_eff_ordering_jump_minus_diffusive",
                                        mean_neff["jump"] - mean_neff["diffusive"], "<", 0.0,
                                        "time-averaged N_eff/M; unobserved counts should decay faster"));
  }
  return summary;
}

RunSummary cmd_effect_check(Config cfg, const RunContext& ctx) {
  RunSummary summary;
  auto params = model_params(cfg);
  const double tol = cfg.num("drift_tolerance");
  for (const auto& which : words(cfg.str("observed"))) {
    if (which != "jump" && which != "diffusive") {
      throw InvalidArgument("effect-check: observed must list 'jump' and/or 'diffusive'");
    }
    const bool jump_seen = which == "jump";
    // All damping goes to the observed channel.
    params.eta = jump_seen ? 0.0 : 1.0;
    const RecordPair pair = make_pair(params, role_of(jump_seen), role_of(!jump_seen), 0);
    const ConditionedModel model(PreparedSpec(pair.estimation), pair.truth.records);
    const FilteredTrajectory filtered = filter(model);
    const EffectTrajectory effects = retrofilter(model);
    const EffectConsistency ec = effect_consistency(filtered, effects);
    CsvWriter csv(ctx.out_dir / ("effect_check_observed_" + which + ".csv"),
                  {"t", "log_tr_rho_tilde", "log_tr_effect", "log_pairing", "pairing_ratio",
                   "tr_rho_filtered"},
                  "effect-check", cfg);
    const double ref = ec.log_pairing.back();
    for (std::size_t k = 0; k < ec.log_pairing.size(); ++k) {
      csv.row({static_cast<double>(k) * model.prepared().dt(), ec.log_filter_trace[k],
               ec.log_effect_trace[k], ec.log_pairing[k], std::exp(ec.log_pairing[k] - ref),
               filtered.states[k].trace()});
    }
    csv.close();
    summary.checks.push_back(make_check("pairing_max_relative_drift[observed=" + which + "]",
                                        ec.max_relative_drift, "<=", tol));
  }
  return summary;
}

RunSummary cmd_smooth_single(Config cfg, const RunContext& ctx) {
  RunSummary summary;
  const auto params = model_params(cfg);
  const auto members = static_cast<std::size_t>(cfg.integer("members"));
  const auto attempts = static_cast<std::uint64_t>(cfg.integer("max_attempts"));
  const Index stride = cfg.integer("stride");
  const std::string want = cfg.str("record");
  if (want != "jump" && want != "nojump") {
    throw InvalidArgument("smooth-single: record must be 'jump' or 'nojump'");
  }
  // First pair whose unobserved record matches: no jump, or exactly one jump
  // in the middle 60% of the interval.
  std::uint64_t chosen = attempts;
  Index jump_step = -1;
  for (std::uint64_t i = 0; i < attempts && chosen == attempts; ++i) {
    const RecordPair pair = make_pair(params, ChannelRole::Unobserved, ChannelRole::Observed, i);
    const auto jumps = jump_steps(pair.truth);
    const double t_final = pair.estimation.t_final;
    if (want == "nojump" && jumps.empty()) chosen = i;
    if (want == "jump" && jumps.size() == 1) {
      const double tj = (jumps[0] + 1) * pair.estimation.dt;
      if (tj > 0.2 * t_final && tj < 0.8 * t_final) {
        chosen = i;
        jump_step = jumps[0];
      }
    }
  }
  if (chosen == attempts) {
    throw InsufficientEnsemble("smooth-single: no record pair of the requested kind in " +
                               std::to_string(attempts) + " attempts; raise max_attempts");
  }
  const RecordPair pair = make_pair(params, ChannelRole::Unobserved, ChannelRole::Observed, chosen);
  const Estimates est = estimate(pair, members, stride, ctx.workers);
  const double dt = pair.estimation.dt;

  std::vector<std::string> cols = {"t"};
  for (const char* who : {"f_", "s_", "t_"}) {
    for (const char* c : {"x", "yb", "z", "purity"}) cols.push_back(std::string(who) + c);
  }
  cols.insert(cols.end(), {"fidelity_f", "fidelity_s", "n_eff_s"});
  CsvWriter csv(ctx.out_dir / ("smooth_single_" + want + ".csv"), cols, "smooth-single", cfg);
  std::size_t s_purer = 0;
  double min_gap_near_jump = INFINITY;
  std::vector<double> post_gain;
  const double t_jump = (jump_step + 1) * dt;
  for (const auto& pt : est.ensemble.smoothed) {
    const Index k = pt.step;
    const DensityOperator& rf = est.filtered.states[k];
    const DensityOperator& rs = pt.state;
    const DensityOperator& rt = pair.truth.states[k];
    std::vector<double> row = {k * dt};
    for (const DensityOperator* r : {&rf, &rs, &rt}) {
      const BlochVector b = bloch(*r);
      row.insert(row.end(), {b.x, b.y, b.z, purity(*r)});
    }
    const double ff = fidelity_to_pure(rf, rt);
    const double fs = fidelity_to_pure(rs, rt);
    row.insert(row.end(), {ff, fs, pt.n_eff});
    csv.row(row);
    const double gap = purity(rs) - purity(rf);
    s_purer += gap >= -1e-12;
    const double t = k * dt;
    if (jump_step >= 0 && std::abs(t - t_jump) <= 0.5) min_gap_near_jump = std::min(min_gap_near_jump, gap);
    if (jump_step >= 0 && t > t_jump && t <= t_jump + 1.0) post_gain.push_back(fs - ff);
  }
  csv.close();
  summary.info["pair_index"] = chosen;
  summary.info["unobserved_jump"] = jump_step >= 0;
  if (jump_step >= 0) summary.info["jump_time"] = t_jump;
  if (want == "nojump") {
    summary.checks.push_back(make_check("fraction_smoothed_purity_at_least_filtered",
                                        static_cast<double>(s_purer) / est.ensemble.smoothed.size(),
                                        ">=", 0.9));
  } else {
    summary.checks.push_back(make_check("min_purity_gap_s_minus_f_near_jump", min_gap_near_jump, "<", 0.0));
    summary.checks.push_back(
        make_check("mean_fidelity_gain_s_minus_f_after_jump", mean_of(post_gain), ">", 0.0));
  }
  return summary;
}

RunSummary cmd_jump_ensemble(Config cfg, const RunContext& ctx) {
  RunSummary summary;
  const auto params = model_params(cfg);
  const auto pairs = static_cast<std::uint64_t>(cfg.integer("pairs"));
  const auto members = static_cast<std::size_t>(cfg.integer("members"));
  const double ws = cfg.num("window_start"), we = cfg.num("window_end");
  const double guard = cfg.num("guard");
  const double pre = cfg.num("pre_window"), post = cfg.num("post_window");
  const auto min_selected = static_cast<std::size_t>(cfg.integer("min_selected"));
  const std::string alignment = cfg.str("alignment");
  if (alignment != "aligned" && alignment != "absolute") {
    throw InvalidArgument("jump-ensemble: alignment must be 'aligned' or 'absolute'");
  }
  const double dt = params.dt, t_final = params.t_final;
  if (!(ws > 0.0 && we < t_final && ws < we)) {
    throw InvalidArgument("jump-ensemble: window must lie strictly inside (0, T)");
  }

  // Selection: exactly one unobserved jump inside [ws, we] and no other jump
  // within `guard` of it. The jump time is that of the first post-jump state.
  struct Selected {
    std::uint64_t index;
    Index jump_step;  // index of the first post-jump state
  };
  std::vector<Selected> selected;
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const RecordPair pair = make_pair(params, ChannelRole::Unobserved, ChannelRole::Observed, i);
    const auto jumps = jump_steps(pair.truth);
    std::vector<Index> inside;
    for (Index k : jumps) {
      const double tj = (k + 1) * dt;
      if (tj >= ws && tj <= we) inside.push_back(k + 1);
    }
    if (inside.size() != 1) continue;
    bool clear = true;
    for (Index k : jumps) {
      if (k + 1 != inside[0] && std::abs((k + 1 - inside[0]) * dt) <= guard) clear = false;
    }
    if (clear) selected.push_back({i, inside[0]});
  }
  summary.info["pairs"] = pairs;
  summary.info["selected"] = selected.size();
  if (selected.size() < min_selected) {
    throw InsufficientEnsemble("jump-ensemble: only " + std::to_string(selected.size()) +
                               " record pairs have a single unobserved jump in the window (need " +
                               std::to_string(min_selected) +
                               "); raise `pairs`, widen the window or lower min_selected");
  }

  // Aligned offsets available for every selection: [-ws, T - we] in steps.
  const Index lo = -static_cast<Index>(std::llround(ws / dt));
  const Index hi = static_cast<Index>(std::llround((t_final - we) / dt));
  const Index pre_n = static_cast<Index>(std::llround(pre / dt));
  const Index post_n = static_cast<Index>(std::llround(post / dt));
  const std::size_t span = static_cast<std::size_t>(hi - lo + 1);
  const std::size_t all = static_cast<std::size_t>(std::llround(t_final / dt)) + 1;
  // series[q][n][offset]: q = purity F, purity S, fidelity F, fidelity S
  std::vector<std::vector<std::vector<double>>> aligned(4), absolute(4);
  std::vector<double> pf0, ps0, fid_f, fid_s, slope_f, slope_s;
  for (const auto& sel : selected) {
    const RecordPair pair =
        make_pair(params, ChannelRole::Unobserved, ChannelRole::Observed, sel.index);
    const Estimates est = estimate(pair, members, 1, ctx.workers);
    std::vector<std::vector<double>> full(4, std::vector<double>(all));
    for (const auto& pt : est.ensemble.smoothed) {
      const Index k = pt.step;
      const auto& rf = est.filtered.states[k];
      const auto& rt = pair.truth.states[k];
      full[0][k] = purity(rf);
      full[1][k] = purity(pt.state);
      full[2][k] = fidelity_to_pure(rf, rt);
      full[3][k] = fidelity_to_pure(pt.state, rt);
    }
    for (int q = 0; q < 4; ++q) {
      std::vector<double> a(span);
      for (Index o = lo; o <= hi; ++o) a[o - lo] = full[q][sel.jump_step + o];
      aligned[q].push_back(a);
      absolute[q].push_back(full[q]);
    }
    pf0.push_back(full[0][sel.jump_step]);
    ps0.push_back(full[1][sel.jump_step]);
    std::vector<double> tt, yf, ys;
    for (Index o = -pre_n; o <= 0; ++o) {
      tt.push_back(o * dt);
      yf.push_back(full[0][sel.jump_step + o]);
      ys.push_back(full[1][sel.jump_step + o]);
    }
    slope_f.push_back(slope_of(tt, yf));
    slope_s.push_back(slope_of(tt, ys));
    double sf = 0.0, ss = 0.0;
    for (Index o = 1; o <= post_n; ++o) {
      sf += full[2][sel.jump_step + o];
      ss += full[3][sel.jump_step + o];
    }
    fid_f.push_back(sf / post_n);
    fid_s.push_back(ss / post_n);
  }

  const bool use_aligned = alignment == "aligned";
  const auto& series = use_aligned ? aligned : absolute;
  const std::size_t len = use_aligned ? span : all;
  CsvWriter csv(ctx.out_dir / "jump_ensemble.csv",
                {use_aligned ? "t_aligned" : "t", "purity_f_mean", "purity_f_se", "purity_s_mean",
                 "purity_s_se", "fidelity_f_mean", "fidelity_f_se", "fidelity_s_mean",
                 "fidelity_s_se", "count"},
                "jump-ensemble", cfg);
  for (std::size_t j = 0; j < len; ++j) {
    std::vector<double> row = {use_aligned ? (lo + static_cast<Index>(j)) * dt : j * dt};
    for (int q = 0; q < 4; ++q) {
      std::vector<double> col;
      for (const auto& s : series[q]) col.push_back(s[j]);
      row.push_back(mean_of(col));
      row.push_back(se_of(col));
    }
    row.push_back(static_cast<double>(selected.size()));
    csv.row(row);
  }
  csv.close();
  CsvWriter sel_csv(ctx.out_dir / "jump_ensemble_selected.csv", {"pair", "jump_time"},
                    "jump-ensemble", cfg);
  for (const auto& s : selected) sel_csv.row({static_cast<double>(s.index), s.jump_step * dt});
  sel_csv.close();

  auto combined = [](const std::vector<double>& a, const std::vector<double>& b) {
    return std::sqrt(se_of(a) * se_of(a) + se_of(b) * se_of(b));
  };
  const double purity_z = (mean_of(pf0) - mean_of(ps0)) / combined(pf0, ps0);
  const double fidelity_z = (mean_of(fid_s) - mean_of(fid_f)) / combined(fid_s, fid_f);
  const double slope_s_z = mean_of(slope_s) / se_of(slope_s);
  const double slope_f_z = mean_of(slope_f) / se_of(slope_f);
  summary.checks.push_back(make_check("purity_f_minus_s_at_jump_in_combined_se", purity_z, ">", 2.0));
  summary.checks.push_back(
      make_check("post_jump_fidelity_s_minus_f_in_combined_se", fidelity_z, ">", 2.0));
  summary.checks.push_back(make_check("prejump_purity_slope_s_in_se", slope_s_z, "<", -2.0));
  summary.checks.push_back(make_check("prejump_purity_slope_f_in_se", slope_f_z, ">=", -2.0));
  summary.info["mean_purity_f_at_jump"] = mean_of(pf0);
  summary.info["mean_purity_s_at_jump"] = mean_of(ps0);
  summary.info["mean_post_fidelity_f"] = mean_of(fid_f);
  summary.info["mean_post_fidelity_s"] = mean_of(fid_s);
  summary.info["mean_prejump_slope_f"] = mean_of(slope_f);
  summary.info["mean_prejump_slope_s"] = mean_of(slope_s);
  summary.info["error_bars"] = "standard error of the mean over selected pairs";
  // Same comparisons using the per-pair differences (reported only).
  auto paired = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return mean_of(d) / se_of(d);
  };
  summary.info["paired_purity_f_minus_s_z"] = paired(pf0, ps0);
  summary.info["paired_fidelity_s_minus_f_z"] = paired(fid_s, fid_f);
  return summary;
}

}  // namespace cpqt::tools

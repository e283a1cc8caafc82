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

#include "cpqt/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpqt/errors.hpp"
#include "cpqt/parallel.hpp"

namespace cpqt {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double z_of(const Operator& rho) {
  if (rho.rows() < 2) return 0.0;
  return rho(0, 0).real() - rho(1, 1).real();
}

std::vector<Index> report_steps(Index steps, Index stride) {
  std::vector<Index> out;
  for (Index k = 0; k <= steps; k += stride) out.push_back(k);
  if (out.back() != steps) out.push_back(steps);
  return out;
}

// Visits member i's states at reporting slots: (slot, rho, log trace).
using SlotVisitor = std::function<void(std::size_t, const Operator&, double)>;
using MemberSource = std::function<void(std::size_t, const SlotVisitor&)>;

// sums[weighting][slot]; weighting 0 uses E = 1, weighting 1 (optional) `effects`.
std::vector<std::vector<WeightedSums>> reduce_members(std::size_t members,
                                                      const std::vector<Index>& steps,
                                                      const EffectTrajectory* effects,
                                                      const MemberSource& source,
                                                      unsigned workers) {
  const std::size_t nw = effects ? 2 : 1;
  const std::size_t chunks = (members + kReductionChunk - 1) / kReductionChunk;
  using Table = std::vector<std::vector<WeightedSums>>;
  std::vector<Table> partial(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    Table table(nw, std::vector<WeightedSums>(steps.size()));
    const std::size_t end = std::min(members, (c + 1) * kReductionChunk);
    for (std::size_t m = c * kReductionChunk; m < end; ++m) {
      source(m, [&](std::size_t slot, const Operator& rho, double log_trace) {
        const double z = z_of(rho);
        double lw = log_trace;
        if (lw != kNegInf) {
          const double tr = rho.trace().real();
          lw = tr > 0.0 ? lw + std::log(tr) : kNegInf;
        }
        table[0][slot].add(lw, rho, z);
        if (effects) {
          const Index k = steps[slot];
          double le = kNegInf;
          if (log_trace != kNegInf) {
            const double pair = trace_product(effects->effects[k], rho).real();
            if (pair > 0.0) le = log_trace + effects->log_scales[k] + std::log(pair);
          }
          table[1][slot].add(le, rho, z);
        }
      });
    }
    partial[c] = std::move(table);
  });
  Table total(nw, std::vector<WeightedSums>(steps.size()));
  for (const auto& table : partial) {
    for (std::size_t w = 0; w < nw; ++w) {
      for (std::size_t s = 0; s < steps.size(); ++s) total[w][s].merge(table[w][s]);
    }
  }
  return total;
}

EnsembleSummary finish(const std::vector<Index>& steps,
                       const std::vector<std::vector<WeightedSums>>& sums) {
  EnsembleSummary out;
  out.steps = steps;
  for (std::size_t s = 0; s < steps.size(); ++s) out.filter.push_back(finalize(sums[0][s], steps[s]));
  if (sums.size() > 1) {
    for (std::size_t s = 0; s < steps.size(); ++s) {
      out.smoothed.push_back(finalize(sums[1][s], steps[s]));
    }
  }
  return out;
}

MemberSource materialized_source(const HypotheticalEnsemble& ens) {
  return [&ens](std::size_t m, const SlotVisitor& visit) {
    const auto& member = ens.members[m];
    for (std::size_t s = 0; s < member.states.size(); ++s) {
      visit(s, member.states[s].matrix(), member.log_traces[s]);
    }
  };
}

std::vector<Index> ensemble_steps(const HypotheticalEnsemble& ens) {
  return report_steps(ens.steps, ens.stride);
}

}  // namespace

FilteredTrajectory filter(const ConditionedModel& model) {
  FilteredTrajectory out;
  Operator rho = model.prepared().spec().initial.matrix();
  const double tr0 = rho.trace().real();
  rho /= tr0;
  double log_trace = std::log(tr0);
  out.states.reserve(static_cast<std::size_t>(model.steps() + 1));
  out.states.push_back(DensityOperator::unchecked(rho, DensityOperator::Kind::Normalized));
  out.log_traces.push_back(log_trace);
  for (Index k = 0; k < model.steps(); ++k) {
    rho = model.forward(k, rho);
    const double tr = rho.trace().real();
    if (!(tr > kTraceUnderflowFloor) || !std::isfinite(tr)) {
      throw WeightUnderflow("filter: record has vanishing likelihood");
    }
    rho /= tr;
    log_trace += std::log(tr);
    out.states.push_back(DensityOperator::unchecked(rho, DensityOperator::Kind::Normalized));
    out.log_traces.push_back(log_trace);
  }
  return out;
}

Operator EffectTrajectory::effect(Index k) const {
  Operator out = std::exp(log_scales[k]) * effects[k];
  return out;
}

EffectTrajectory retrofilter(const ConditionedModel& model) {
  const Index steps = model.steps();
  const Index n = model.prepared().spec().dim();
  EffectTrajectory out;
  out.effects.resize(static_cast<std::size_t>(steps + 1));
  out.log_scales.resize(static_cast<std::size_t>(steps + 1));
  Operator e = Operator::Identity(n, n);
  double log_scale = 0.0;
  out.effects[steps] = e;
  out.log_scales[steps] = 0.0;
  for (Index k = steps; k-- > 0;) {
    e = model.adjoint(k, e);
    const double tr = e.trace().real();
    if (!(tr > kTraceUnderflowFloor) || !std::isfinite(tr)) {
      throw WeightUnderflow("retrofilter: effect trace vanished");
    }
    e *= static_cast<double>(n) / tr;
    log_scale += std::log(tr / static_cast<double>(n));
    out.effects[k] = e;
    out.log_scales[k] = log_scale;
  }
  return out;
}

EffectTrajectory identity_effects(Index dim, Index steps) {
  EffectTrajectory out;
  out.effects.assign(static_cast<std::size_t>(steps + 1), Operator::Identity(dim, dim));
  out.log_scales.assign(static_cast<std::size_t>(steps + 1), 0.0);
  return out;
}

EffectConsistency effect_consistency(const FilteredTrajectory& filtered,
                                     const EffectTrajectory& effects) {
  if (filtered.states.size() != effects.effects.size()) {
    throw DimensionMismatch("effect_consistency: length mismatch");
  }
  EffectConsistency out;
  const std::size_t n = filtered.states.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double pair = trace_product(filtered.states[k].matrix(), effects.effects[k]).real();
    out.log_pairing.push_back(filtered.log_traces[k] + effects.log_scales[k] + std::log(pair));
    out.log_filter_trace.push_back(filtered.log_traces[k]);
    out.log_effect_trace.push_back(effects.log_scales[k] +
                                   std::log(effects.effects[k].trace().real()));
  }
  const double ref = out.log_pairing.back();
  for (double lp : out.log_pairing) {
    out.max_relative_drift = std::max(out.max_relative_drift, std::abs(std::expm1(lp - ref)));
  }
  return out;
}

double n_eff(const std::vector<double>& weights) {
  double s = 0.0, s2 = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw InvalidArgument("n_eff: negative weight");
    s += w;
    s2 += w * w;
  }
  if (!(s > 0.0)) throw InsufficientEnsemble("n_eff: every weight is zero");
  return s * s / s2;
}

WeightedSums::WeightedSums() : log_scale(kNegInf) {}

void WeightedSums::add(double log_w, const Operator& rho, double z) {
  ++members;
  if (!(log_w > kNegInf)) return;
  if (swrho.size() == 0) swrho = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  if (log_w > log_scale) {
    const double f = std::exp(log_scale - log_w);
    const double f2 = f * f;
    sw *= f;
    swz *= f;
    swrho *= f;
    sw2 *= f2;
    sw2z *= f2;
    sw2z2 *= f2;
    log_scale = log_w;
  }
  const double w = std::exp(log_w - log_scale);
  sw += w;
  sw2 += w * w;
  swz += w * z;
  sw2z += w * w * z;
  sw2z2 += w * w * z * z;
  swrho += w * rho;
}

void WeightedSums::merge(const WeightedSums& o) {
  members += o.members;
  if (!(o.log_scale > kNegInf)) return;
  if (!(log_scale > kNegInf)) {
    const std::size_t m = members;
    *this = o;
    members = m;
    return;
  }
  const double top = std::max(log_scale, o.log_scale);
  const double a = std::exp(log_scale - top);
  const double b = std::exp(o.log_scale - top);
  sw = a * sw + b * o.sw;
  swz = a * swz + b * o.swz;
  swrho = a * swrho + b * o.swrho;
  sw2 = a * a * sw2 + b * b * o.sw2;
  sw2z = a * a * sw2z + b * b * o.sw2z;
  sw2z2 = a * a * sw2z2 + b * b * o.sw2z2;
  log_scale = top;
}

EnsemblePoint finalize(const WeightedSums& s, Index step) {
  if (!(s.sw > 0.0)) throw InsufficientEnsemble("ensemble: every weight underflowed");
  EnsemblePoint p;
  p.step = step;
  Operator mean = s.swrho / s.sw;
  p.state = DensityOperator::unchecked(hermitize(mean), DensityOperator::Kind::Normalized);
  p.n_eff = s.sw * s.sw / s.sw2;
  p.z_mean = s.swz / s.sw;
  const double var = s.sw2z2 - 2.0 * p.z_mean * s.sw2z + p.z_mean * p.z_mean * s.sw2;
  p.z_se = std::sqrt(std::max(var, 0.0)) / s.sw;
  return p;
}

EnsembleSummary summarize_ensemble(const HypotheticalPlan& plan, const EffectTrajectory* effects,
                                   const EnsembleOptions& opts) {
  if (opts.members == 0) throw InsufficientEnsemble("summarize_ensemble: no members");
  if (opts.stride < 1) throw InvalidArgument("summarize_ensemble: stride must be >= 1");
  const Index steps = plan.steps();
  const auto report = report_steps(steps, opts.stride);
  const Index stride = opts.stride;
  MemberSource source = [&](std::size_t m, const SlotVisitor& visit) {
    std::size_t slot = 0;
    visit_hypothetical_member(plan, m,
                              [&](Index k, const Operator& rho, double lt, const StepOutcomes*) {
                                if (k % stride == 0 || k == steps) visit(slot++, rho, lt);
                              });
  };
  return finish(report, reduce_members(opts.members, report, effects, source, opts.workers));
}

HypotheticalEnsemble generate_ensemble(const HypotheticalPlan& plan, std::size_t members,
                                       Index stride, unsigned workers) {
  HypotheticalEnsemble ens;
  ens.stride = stride;
  ens.steps = plan.steps();
  ens.members.resize(members);
  parallel_for(members, workers, [&](std::size_t m) {
    ens.members[m] = run_trajectory(plan.model().prepared(), Mode::Hypothetical,
                                    RunInputs{&plan, m, stride});
  });
  return ens;
}

SmoothedTrajectory smooth(const HypotheticalEnsemble& ens, const EffectTrajectory& effects) {
  if (ens.members.empty()) throw InsufficientEnsemble("smooth: empty ensemble");
  const auto steps = ensemble_steps(ens);
  const auto summary =
      finish(steps, reduce_members(ens.members.size(), steps, &effects, materialized_source(ens), 1));
  SmoothedTrajectory out;
  out.steps = steps;
  for (const auto& p : summary.smoothed) {
    out.states.push_back(p.state);
    out.n_eff.push_back(p.n_eff);
  }
  return out;
}

ConsistencyTrace filter_consistency(const EnsembleSummary& summary,
                                    const FilteredTrajectory& filtered) {
  ConsistencyTrace out;
  out.steps = summary.steps;
  for (const auto& p : summary.filter) {
    out.dz.push_back(p.z_mean - z_of(filtered.states[p.step].matrix()));
    out.se.push_back(p.z_se);
    out.n_eff.push_back(p.n_eff);
  }
  return out;
}

ConsistencyTrace filter_consistency(const HypotheticalEnsemble& ens,
                                    const FilteredTrajectory& filtered) {
  if (ens.members.empty()) throw InsufficientEnsemble("filter_consistency: empty ensemble");
  const auto steps = ensemble_steps(ens);
  const auto summary =
      finish(steps, reduce_members(ens.members.size(), steps, nullptr, materialized_source(ens), 1));
  return filter_consistency(summary, filtered);
}

}  // namespace cpqt

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

#include "cpqt/conditioned_model.hpp"

#include <cmath>
#include <limits>

#include "cpqt/errors.hpp"
#include "cpqt/superoperators.hpp"

namespace cpqt {

ConditionedModel::ConditionedModel(PreparedSpec prepared,
                                   const std::vector<MeasurementRecord>& records)
    : prepared_(std::move(prepared)) {
  const auto& slots = prepared_.spec().channels;
  const std::size_t nch = slots.size();
  const Index steps = prepared_.steps();
  observed_.resize(nch);
  ops_.assign(static_cast<std::size_t>(steps), std::vector<Operator>(nch));
  outcomes_.assign(static_cast<std::size_t>(steps),
                   StepOutcomes(nch, std::numeric_limits<double>::quiet_NaN()));
  for (std::size_t ch = 0; ch < nch; ++ch) {
    observed_[ch] = slots[ch].role == ChannelRole::Observed;
    if (!observed_[ch]) continue;
    const MeasurementRecord* rec = nullptr;
    for (const auto& r : records) {
      if (r.channel == ch) rec = &r;
    }
    if (rec == nullptr) throw InvalidArgument("ConditionedModel: missing observed record");
    if (static_cast<Index>(rec->values.size()) != steps) {
      throw DimensionMismatch("ConditionedModel: record length does not match the grid");
    }
    for (Index k = 0; k < steps; ++k) {
      const double v = rec->values[static_cast<std::size_t>(k)];
      ops_[k][ch] = prepared_.kraus(ch, v);
      outcomes_[k][ch] = v;
    }
  }
}

bool ConditionedModel::observed(std::size_t ch) const { return observed_.at(ch); }

const Operator& ConditionedModel::observed_op(Index k, std::size_t ch) const {
  if (!observed(ch)) throw InvalidArgument("observed_op: channel is unobserved");
  return ops_[static_cast<std::size_t>(k)][ch];
}

Operator ConditionedModel::forward(Index k, const Operator& rho_tilde) const {
  const auto& chans = prepared_.channels();
  const Operator& v = prepared_.unitary();
  Operator rho = v * rho_tilde * v.adjoint();
  for (std::size_t ch = 0; ch < chans.size(); ++ch) {
    rho = observed_[ch] ? sandwich(ops_[k][ch], rho)
                        : unconditional_map(chans[ch].lindblad, rho, prepared_.dt());
  }
  return hermitize(rho);
}

Operator ConditionedModel::adjoint(Index k, const Operator& effect) const {
  const auto& chans = prepared_.channels();
  Operator e = effect;
  for (std::size_t i = chans.size(); i-- > 0;) {
    e = observed_[i] ? Operator(ops_[k][i].adjoint() * e * ops_[k][i])
                     : unconditional_map_adjoint(chans[i].lindblad, e, prepared_.dt());
  }
  const Operator& v = prepared_.unitary();
  Operator out = v.adjoint() * e * v;
  return hermitize(out);
}

HypotheticalPlan::HypotheticalPlan(const ConditionedModel& model,
                                   const FilteredTrajectory& filtered)
    : model_(&model) {
  const Index steps = model.steps();
  if (static_cast<Index>(filtered.states.size()) != steps + 1) {
    throw DimensionMismatch("HypotheticalPlan: filtered trajectory length mismatch");
  }
  const auto& chans = model.prepared().channels();
  const double dt = model.prepared().dt();
  lambda_.assign(static_cast<std::size_t>(steps), std::vector<double>(chans.size(), 0.0));
  no_jump_.assign(static_cast<std::size_t>(steps), std::vector<Operator>(chans.size()));
  jump_.assign(static_cast<std::size_t>(steps), std::vector<Operator>(chans.size()));
  for (Index k = 0; k < steps; ++k) {
    for (std::size_t ch = 0; ch < chans.size(); ++ch) {
      if (model.observed(ch) || !chans[ch].jump) continue;
      const auto& c = chans[ch].lindblad;
      const double lambda =
          trace_product(chans[ch].lindblad_sq, filtered.states[k].matrix()).real();
      lambda_[k][ch] = lambda;
      no_jump_[k][ch] = no_jump_op(c, lambda > 0.0 ? lambda : 0.0, dt, SchemeOrder::CPQT);
      if (lambda > 0.0) jump_[k][ch] = c / std::sqrt(lambda);
    }
  }
}

Operator HypotheticalPlan::step(Index k, const Operator& rho_tilde, RandomStream& rng,
                                StepOutcomes& outcomes) const {
  const auto& p = model_->prepared();
  const auto& chans = p.channels();
  const double dt = p.dt();
  outcomes.assign(chans.size(), 0.0);
  const Operator& v = p.unitary();
  Operator rho = v * rho_tilde * v.adjoint();
  for (std::size_t ch = 0; ch < chans.size(); ++ch) {
    if (model_->observed(ch)) {
      outcomes[ch] = model_->observed_outcomes(k)[ch];
      rho = sandwich(model_->observed_op(k, ch), rho);
    } else if (chans[ch].jump) {
      const double lambda = lambda_[k][ch];
      if (lambda > 0.0) {
        const bool dn = rng.bernoulli(lambda * dt);
        outcomes[ch] = dn ? 1.0 : 0.0;
        rho = sandwich(dn ? jump_[k][ch] : no_jump_[k][ch], rho);
      } else {
        rng.uniform();
        rho = sandwich(no_jump_[k][ch], rho);
      }
    } else {
      const double y = rng.normal() / std::sqrt(dt);
      outcomes[ch] = y;
      rho = sandwich(p.diffusive_kraus(ch, y), rho);
    }
  }
  return hermitize(rho);
}

}  // namespace cpqt

namespace cpqt {

void visit_hypothetical_member(const HypotheticalPlan& plan, std::uint64_t index,
                               const MemberVisitor& visit) {
  const auto& p = plan.model().prepared();
  RandomStream rng = trajectory_stream(p, Mode::Hypothetical, index);
  Operator rho = p.spec().initial.matrix();
  const double tr0 = rho.trace().real();
  rho /= tr0;
  double log_trace = std::log(tr0);
  visit(0, rho, log_trace, nullptr);
  StepOutcomes out;
  const double dead = -std::numeric_limits<double>::infinity();
  for (Index k = 0; k < plan.steps(); ++k) {
    if (log_trace == dead) {
      out.assign(p.channels().size(), std::numeric_limits<double>::quiet_NaN());
      visit(k + 1, rho, log_trace, &out);
      continue;
    }
    rho = plan.step(k, rho, rng, out);
    const double tr = rho.trace().real();
    if (tr > kTraceUnderflowFloor && std::isfinite(tr)) {
      rho /= tr;
      log_trace += std::log(tr);
    } else {
      log_trace = dead;
    }
    visit(k + 1, rho, log_trace, &out);
  }
}

}  // namespace cpqt

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

#include "cpqt/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "cpqt/conditioned_model.hpp"
#include "cpqt/errors.hpp"
#include "cpqt/propagators.hpp"
#include "cpqt/superoperators.hpp"

namespace cpqt {
namespace {

double normalize_in_place(Operator& rho) {
  const double tr = rho.trace().real();
  if (!(tr > kTraceUnderflowFloor) || !std::isfinite(tr)) {
    throw WeightUnderflow("trajectory: trace below underflow floor");
  }
  rho /= tr;
  return tr;
}

Operator sandwich_v(const Operator& v, const Operator& rho) {
  Operator out = v * rho * v.adjoint();
  return out;
}

}  // namespace

PreparedSpec::PreparedSpec(SystemSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  steps_ = spec_.steps();
  v_ = unitary_of_hamiltonian(spec_.hamiltonian, spec_.dt);
  const double dt = spec_.dt;
  for (const auto& slot : spec_.channels) {
    PreparedChannel pc;
    pc.jump = slot.is_jump();
    pc.lindblad = slot.lindblad();
    pc.lindblad_sq = pc.lindblad.adjoint() * pc.lindblad;
    if (pc.jump) {
      const auto ops = jump_ops(slot.jump(), dt, SchemeOrder::CPQT);
      pc.lambda = slot.jump().lambda;
      pc.m0_cpqt = ops.no_jump;
      pc.m1 = ops.jump;
    } else {
      pc.phi = slot.diffusive().phi;
      pc.rotated = rotated(slot.diffusive());
      pc.base_cpqt = diffusive_base(slot.diffusive(), dt, SchemeOrder::CPQT);
      pc.bb_rotated = pc.lindblad_sq * pc.rotated;
    }
    channels_.push_back(std::move(pc));
  }
}

Operator PreparedSpec::diffusive_kraus(std::size_t ch, double y) const {
  const auto& pc = channels_[ch];
  Operator m = pc.base_cpqt + (y * spec_.dt) * pc.rotated;
  return m;
}

Operator PreparedSpec::kraus(std::size_t ch, double outcome) const {
  const auto& pc = channels_[ch];
  if (!pc.jump) return diffusive_kraus(ch, outcome);
  if (outcome != 0.0 && outcome != 1.0) throw InvalidArgument("kraus: count must be 0 or 1");
  return outcome == 1.0 ? pc.m1 : pc.m0_cpqt;
}

Operator true_step(const Operator& rho_in, const PreparedSpec& p, RandomStream& rng,
                   StepOutcomes& outcomes) {
  const double dt = p.dt();
  outcomes.assign(p.channels().size(), 0.0);
  Operator rho = sandwich_v(p.unitary(), rho_in);
  for (std::size_t ch = 0; ch < p.channels().size(); ++ch) {
    const auto& pc = p.channels()[ch];
    if (pc.jump) {
      const double prob = trace_product(pc.lindblad_sq, rho).real() * dt;
      if (prob >= 1.0) throw InvalidStepSize("true_step: jump probability reaches one");
      const bool dn = rng.bernoulli(prob);
      outcomes[ch] = dn ? 1.0 : 0.0;
      rho = sandwich(dn ? pc.m1 : pc.m0_cpqt, rho);
    } else {
      const DiffusiveChannel dc{pc.lindblad, pc.phi};
      const OutcomeMoments m = actual_diffusive_moments(dc, rho, dt, p.spec().diffusive_sampling);
      const double y = m.mean + std::sqrt(m.variance) * rng.normal();
      outcomes[ch] = y;
      rho = sandwich(p.diffusive_kraus(ch, y), rho);
    }
    normalize_in_place(rho);
  }
  return hermitize(rho);
}

std::pair<DensityOperator, StepOutcomes> true_step(const DensityOperator& rho,
                                                   const PreparedSpec& p, RandomStream& rng) {
  StepOutcomes out;
  Operator next = true_step(rho.matrix(), p, rng, out);
  return {DensityOperator::unchecked(std::move(next), DensityOperator::Kind::Normalized),
          std::move(out)};
}

Operator euler_step(const Operator& rho, const PreparedSpec& p, RandomStream& rng,
                    StepOutcomes& outcomes) {
  const double dt = p.dt();
  const cplx i(0.0, 1.0);
  outcomes.assign(p.channels().size(), 0.0);
  Operator drho = (-i * dt) * commutator(p.spec().hamiltonian, rho);
  for (std::size_t ch = 0; ch < p.channels().size(); ++ch) {
    const auto& pc = p.channels()[ch];
    if (pc.jump) {
      const double prob =
          std::clamp(trace_product(pc.lindblad_sq, rho).real() * dt, 0.0, 1.0);
      const bool dn = rng.bernoulli(prob);
      outcomes[ch] = dn ? 1.0 : 0.0;
      drho -= dt * superop_H(0.5 * pc.lindblad_sq, rho);
      if (dn) drho += superop_G(pc.lindblad, rho);
    } else {
      const double mean = 2.0 * trace_product(pc.rotated, rho).real();
      const double y = mean + rng.normal() / std::sqrt(dt);
      outcomes[ch] = y;
      drho += dt * dissipator(pc.lindblad, rho);
      drho += ((y - mean) * dt) * superop_H(pc.rotated, rho);
    }
  }
  return hermitize(rho + drho);
}

std::pair<DensityOperator, StepOutcomes> euler_step(const DensityOperator& rho,
                                                    const PreparedSpec& p, RandomStream& rng) {
  StepOutcomes out;
  Operator next = euler_step(rho.matrix(), p, rng, out);
  return {DensityOperator::unchecked(std::move(next), DensityOperator::Kind::Normalized),
          std::move(out)};
}

Operator hypothetical_step(const Operator& rho_tilde, const StepOutcomes& observed,
                           const Operator& rho_filter, const PreparedSpec& p, RandomStream& rng,
                           StepOutcomes& outcomes) {
  const double dt = p.dt();
  outcomes.assign(p.channels().size(), 0.0);
  Operator rho = sandwich_v(p.unitary(), rho_tilde);
  for (std::size_t ch = 0; ch < p.channels().size(); ++ch) {
    const auto& pc = p.channels()[ch];
    const bool obs = p.spec().channels[ch].role == ChannelRole::Observed;
    if (obs) {
      outcomes[ch] = observed[ch];
      rho = sandwich(p.kraus(ch, observed[ch]), rho);
    } else if (pc.jump) {
      const double lambda = trace_product(pc.lindblad_sq, rho_filter).real();
      if (lambda > 0.0) {
        const bool dn = rng.bernoulli(lambda * dt);
        outcomes[ch] = dn ? 1.0 : 0.0;
        rho = dn ? sandwich(pc.lindblad / std::sqrt(lambda), rho)
                 : sandwich(no_jump_op(pc.lindblad, lambda, dt, SchemeOrder::CPQT), rho);
      } else {
        rng.uniform();
        rho = sandwich(no_jump_op(pc.lindblad, 0.0, dt, SchemeOrder::CPQT), rho);
      }
    } else {
      const double y = rng.normal() / std::sqrt(dt);
      outcomes[ch] = y;
      rho = sandwich(p.diffusive_kraus(ch, y), rho);
    }
  }
  return hermitize(rho);
}

Operator unconditioned_step(const Operator& rho_in, const PreparedSpec& p) {
  Operator rho = sandwich_v(p.unitary(), rho_in);
  for (const auto& pc : p.channels()) rho = unconditional_map(pc.lindblad, rho, p.dt());
  return hermitize(rho);
}

DensityOperator unconditioned_step(const DensityOperator& rho, const PreparedSpec& p) {
  return DensityOperator::unchecked(unconditioned_step(rho.matrix(), p), rho.kind());
}

RandomStream trajectory_stream(const PreparedSpec& p, Mode mode, std::uint64_t index) {
  const StreamTag tag = mode == Mode::Euler          ? StreamTag::Euler
                        : mode == Mode::Hypothetical ? StreamTag::Hypothetical
                                                     : StreamTag::True;
  return RandomStream(p.spec().seed, tag, {index});
}

Trajectory run_trajectory(const PreparedSpec& p, Mode mode, const RunInputs& in) {
  if (in.stride < 1) throw InvalidArgument("run_trajectory: stride must be >= 1");
  if (mode == Mode::Hypothetical && in.plan == nullptr) {
    throw InvalidArgument("run_trajectory: hypothetical mode needs a plan");
  }
  const Index steps = p.steps();
  const std::size_t nch = p.channels().size();
  Trajectory traj;
  traj.stride = in.stride;
  traj.normalized = mode != Mode::Hypothetical;
  for (std::size_t ch = 0; ch < nch; ++ch) {
    MeasurementRecord rec;
    rec.channel = ch;
    rec.kind = p.channels()[ch].jump ? RecordKind::Counts : RecordKind::Current;
    if (mode == Mode::True || mode == Mode::Euler || mode == Mode::Hypothetical) {
      rec.values.reserve(static_cast<std::size_t>(steps));
    }
    traj.records.push_back(std::move(rec));
  }

  auto keep = [&](Index k) { return k % in.stride == 0 || k == steps; };
  if (mode == Mode::Hypothetical) {
    visit_hypothetical_member(*in.plan, in.stream_index,
                              [&](Index k, const Operator& rho, double log_trace,
                                  const StepOutcomes* out) {
                                if (out != nullptr) {
                                  for (std::size_t ch = 0; ch < nch; ++ch) {
                                    traj.records[ch].values.push_back((*out)[ch]);
                                  }
                                }
                                if (!keep(k)) return;
                                traj.states.push_back(DensityOperator::unchecked(
                                    rho, DensityOperator::Kind::Normalized));
                                traj.log_traces.push_back(log_trace);
                              });
    return traj;
  }

  RandomStream rng = trajectory_stream(p, mode, in.stream_index);
  Operator rho = p.spec().initial.matrix();
  auto store = [&](Index k) {
    if (keep(k)) {
      traj.states.push_back(DensityOperator::unchecked(rho, DensityOperator::Kind::Normalized));
    }
  };
  store(0);
  StepOutcomes out;
  for (Index k = 0; k < steps; ++k) {
    switch (mode) {
      case Mode::True:
        rho = true_step(rho, p, rng, out);
        break;
      case Mode::Euler:
        rho = euler_step(rho, p, rng, out);
        break;
      default:
        rho = unconditioned_step(rho, p);
        break;
    }
    if (mode != Mode::Unconditioned) {
      for (std::size_t ch = 0; ch < nch; ++ch) traj.records[ch].values.push_back(out[ch]);
    }
    store(k + 1);
  }
  return traj;
}

}  // namespace cpqt

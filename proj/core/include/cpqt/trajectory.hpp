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

#include <utility>
#include <vector>

#include "cpqt/rng.hpp"
#include "cpqt/system.hpp"

namespace cpqt {

/// Per-channel operators that do not depend on the state or the outcome.
struct PreparedChannel {
  bool jump = true;
  Operator lindblad;     // c or b
  Operator lindblad_sq;  // a^dag a
  // jump channels
  double lambda = 1.0;
  Operator m0_cpqt;
  Operator m1;
  // diffusive channels
  double phi = 0.0;
  Operator rotated;    // e^{-i phi} b
  Operator base_cpqt;  // 1 - b^dag b dt / 2 - (b^dag b)^2 dt^2 / 8
  Operator bb_rotated; // b^dag b e^{-i phi} b
};

/// SystemSpec plus its cached step unitary and channel operators.
class PreparedSpec {
 public:
  explicit PreparedSpec(SystemSpec spec);

  const SystemSpec& spec() const { return spec_; }
  const Operator& unitary() const { return v_; }
  const std::vector<PreparedChannel>& channels() const { return channels_; }
  double dt() const { return spec_.dt; }
  Index steps() const { return steps_; }

  /// M_y for a diffusive channel (CPQT order).
  Operator diffusive_kraus(std::size_t ch, double y) const;
  /// Kraus operator of an observed outcome: M0 / M1 or M_y.
  Operator kraus(std::size_t ch, double outcome) const;

 private:
  SystemSpec spec_;
  Index steps_ = 0;
  Operator v_;
  std::vector<PreparedChannel> channels_;
};

/// One sampled value per channel: Delta n in {0, 1} or the current y.
using StepOutcomes = std::vector<double>;

/// Normalized true-state step: exact V, then each channel in declared order.
/// Jumps are Bernoulli with Tr[c rho c^dag] dt at the current state, and
/// currents are Gaussian with moments evaluated after the preceding channels.
Operator true_step(const Operator& rho, const PreparedSpec& p, RandomStream& rng,
                   StepOutcomes& outcomes);
std::pair<DensityOperator, StepOutcomes> true_step(const DensityOperator& rho,
                                                   const PreparedSpec& p, RandomStream& rng);

/// Additive first-order update:
/// dt(-i[H, rho] - H[c^dag c / 2] rho + D[b] rho) + G[c] rho dn + H[e^{-i phi} b] rho dw.
/// The result is hermitized but never projected back to a physical state.
Operator euler_step(const Operator& rho, const PreparedSpec& p, RandomStream& rng,
                    StepOutcomes& outcomes);
std::pair<DensityOperator, StepOutcomes> euler_step(const DensityOperator& rho,
                                                    const PreparedSpec& p, RandomStream& rng);

/// Unnormalized hypothetical step. Observed channels replay `observed[ch]`;
/// unobserved jump channels draw from Bernoulli(Tr[c rho_F c^dag] dt) with
/// rho_F the filtered state at the start of the step, and unobserved currents
/// draw from N(0, 1/dt). Sampled values are written to `outcomes`.
Operator hypothetical_step(const Operator& rho_tilde, const StepOutcomes& observed,
                           const Operator& rho_filter, const PreparedSpec& p, RandomStream& rng,
                           StepOutcomes& outcomes);

/// V rho V^dag followed by the second-order unconditional map per channel.
Operator unconditioned_step(const Operator& rho, const PreparedSpec& p);
DensityOperator unconditioned_step(const DensityOperator& rho, const PreparedSpec& p);

enum class Mode { True, Euler, Unconditioned, Hypothetical };

class HypotheticalPlan;

struct RunInputs {
  /// Required for Mode::Hypothetical.
  const HypotheticalPlan* plan = nullptr;
  /// Selects the RNG substream (trajectory or member number).
  std::uint64_t stream_index = 0;
  Index stride = 1;
};

/// T/dt steps from spec.initial; states kept every `stride` steps and at T.
Trajectory run_trajectory(const PreparedSpec& p, Mode mode, const RunInputs& in = {});

/// RNG substream used by run_trajectory for a given mode and index.
RandomStream trajectory_stream(const PreparedSpec& p, Mode mode, std::uint64_t index);

}  // namespace cpqt

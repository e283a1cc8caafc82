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

#include <functional>
#include <vector>

#include "cpqt/trajectory.hpp"

namespace cpqt {

/// Per-step maps conditioned on an observed record. Observed channels carry
/// the replayed Kraus operator; unobserved channels act through the
/// second-order unconditional map. The forward map of step k is
/// V, then the channels in declared order; `adjoint` is its exact dual.
class ConditionedModel {
 public:
  /// `records` must contain one full-length record for every observed
  /// channel (matched by MeasurementRecord::channel); others are ignored.
  ConditionedModel(PreparedSpec prepared, const std::vector<MeasurementRecord>& records);

  const PreparedSpec& prepared() const { return prepared_; }
  Index steps() const { return prepared_.steps(); }
  bool observed(std::size_t ch) const;
  /// Replayed Kraus operator; only valid for observed channels.
  const Operator& observed_op(Index k, std::size_t ch) const;
  /// Observed outcomes of step k (NaN for unobserved channels).
  const StepOutcomes& observed_outcomes(Index k) const { return outcomes_[k]; }

  Operator forward(Index k, const Operator& rho_tilde) const;
  Operator adjoint(Index k, const Operator& effect) const;

 private:
  PreparedSpec prepared_;
  std::vector<bool> observed_;
  std::vector<std::vector<Operator>> ops_;  // [step][channel]
  std::vector<StepOutcomes> outcomes_;
};

/// rho_F(t) = exp(-log_traces[t]) rho_tilde_F(t): normalized states and the
/// accumulated log trace of the unnormalized filter.
struct FilteredTrajectory {
  std::vector<DensityOperator> states;
  std::vector<double> log_traces;
};

/// Operators for the hypothetical members of one record. Unobserved jump
/// channels use the ostensible rate lambda_t = Tr[c rho_F(t) c^dag]; when it
/// vanishes no jump is drawn and M0 takes lambda = 0.
class HypotheticalPlan {
 public:
  HypotheticalPlan(const ConditionedModel& model, const FilteredTrajectory& filtered);

  const ConditionedModel& model() const { return *model_; }
  Index steps() const { return model_->steps(); }

  /// Unnormalized step k; sampled unobserved values go to `outcomes`
  /// (observed channels receive their replayed values).
  Operator step(Index k, const Operator& rho_tilde, RandomStream& rng,
                StepOutcomes& outcomes) const;

  double ostensible_rate(Index k, std::size_t ch) const { return lambda_[k][ch]; }

 private:
  const ConditionedModel* model_;
  std::vector<std::vector<double>> lambda_;       // [step][channel]
  std::vector<std::vector<Operator>> no_jump_;    // [step][channel]
  std::vector<std::vector<Operator>> jump_;       // [step][channel]
};

}  // namespace cpqt

namespace cpqt {

/// Called with (step, normalized state, accumulated log trace) at step 0 and
/// after every step; a member whose trace underflows reports log trace -inf
/// once and is not stepped again.
using MemberVisitor = std::function<void(Index, const Operator&, double, const StepOutcomes*)>;

/// Runs hypothetical member `index` on substream (seed, Hypothetical, index).
void visit_hypothetical_member(const HypotheticalPlan& plan, std::uint64_t index,
                               const MemberVisitor& visit);

}  // namespace cpqt

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

#include <cstdint>
#include <vector>

#include "cpqt/conditioned_model.hpp"

namespace cpqt {

/// Forward scan of the conditioned maps from spec.initial. Throws
/// WeightUnderflow if the record is incompatible with the dynamics.
FilteredTrajectory filter(const ConditionedModel& model);

/// E(t) = exp(log_scales[t]) effects[t]; each stored effect has trace N.
struct EffectTrajectory {
  std::vector<Operator> effects;
  std::vector<double> log_scales;

  Operator effect(Index k) const;
};

/// Backward scan of the adjoint maps from E(T) = 1.
EffectTrajectory retrofilter(const ConditionedModel& model);

struct EffectConsistency {
  /// log Tr[rho_tilde_F(t) E(t)]
  std::vector<double> log_pairing;
  /// log Tr[rho_tilde_F(t)] and log Tr[E(t)]
  std::vector<double> log_filter_trace;
  std::vector<double> log_effect_trace;
  /// max_t |Tr[rho_tilde_F(t) E(t)] / Tr[rho_tilde_F(T)] - 1|
  double max_relative_drift = 0.0;
};

EffectConsistency effect_consistency(const FilteredTrajectory& filtered,
                                     const EffectTrajectory& effects);

/// (sum w)^2 / sum w^2. Throws InsufficientEnsemble if every weight is zero
/// and InvalidArgument on a negative weight.
double n_eff(const std::vector<double>& weights);

/// Weighted sums of one reporting time, kept relative to exp(log_scale) so
/// exponentially small weights never underflow. Members with log weight
/// -inf only bump `members`.
struct WeightedSums {
  double log_scale;
  double sw = 0.0;
  double sw2 = 0.0;
  double swz = 0.0;
  double sw2z = 0.0;
  double sw2z2 = 0.0;
  Eigen::MatrixXcd swrho;
  std::size_t members = 0;

  WeightedSums();
  void add(double log_w, const Operator& rho, double z);
  void merge(const WeightedSums& other);
};

/// Weighted ensemble statistics at one time.
struct EnsemblePoint {
  Index step = 0;
  DensityOperator state = DensityOperator::maximally_mixed(2);
  double n_eff = 0.0;
  /// Weighted mean of z = rho_00 - rho_11 and its standard error
  /// sqrt(sum w^2 (z - zbar)^2) / sum w.
  double z_mean = 0.0;
  double z_se = 0.0;
};

EnsemblePoint finalize(const WeightedSums& sums, Index step);

/// Member weights are w_k(t) = exp(l_k(t)) Tr[E(t) rho_k(t)]; `filter`
/// points use E = 1, `smoothed` points the retro-filtered effect. Members are
/// reduced in fixed chunks of 64 and the chunks merged in index order, so
/// the result does not depend on the worker count.
struct EnsembleSummary {
  std::vector<Index> steps;
  std::vector<EnsemblePoint> filter;
  std::vector<EnsemblePoint> smoothed;
};

struct EnsembleOptions {
  std::size_t members = 2000;
  /// Report every `stride` steps and at T.
  Index stride = 10;
  unsigned workers = 1;
};

inline constexpr std::size_t kReductionChunk = 64;

/// Streams members through the reduction without storing them. `effects`
/// may be null, leaving `smoothed` empty.
EnsembleSummary summarize_ensemble(const HypotheticalPlan& plan, const EffectTrajectory* effects,
                                   const EnsembleOptions& opts);

/// Materialized ensemble: members generated by run_trajectory in
/// hypothetical mode (normalized states plus log traces).
struct HypotheticalEnsemble {
  Index stride = 1;
  Index steps = 0;
  std::vector<Trajectory> members;
};

HypotheticalEnsemble generate_ensemble(const HypotheticalPlan& plan, std::size_t members,
                                       Index stride = 1, unsigned workers = 1);

struct SmoothedTrajectory {
  std::vector<Index> steps;
  std::vector<DensityOperator> states;
  std::vector<double> n_eff;
};

/// Weighted average of member states with weights exp(l_k) Tr[E(t) rho_k].
/// Throws InsufficientEnsemble when every weight vanishes at a time.
SmoothedTrajectory smooth(const HypotheticalEnsemble& ensemble, const EffectTrajectory& effects);

struct ConsistencyTrace {
  std::vector<Index> steps;
  /// z of the trace-weighted ensemble average minus z of the filter.
  std::vector<double> dz;
  std::vector<double> se;
  std::vector<double> n_eff;
};

ConsistencyTrace filter_consistency(const HypotheticalEnsemble& ensemble,
                                    const FilteredTrajectory& filtered);
ConsistencyTrace filter_consistency(const EnsembleSummary& summary,
                                    const FilteredTrajectory& filtered);

/// E(t) = 1 at every step of a grid with `steps` steps.
EffectTrajectory identity_effects(Index dim, Index steps);

}  // namespace cpqt

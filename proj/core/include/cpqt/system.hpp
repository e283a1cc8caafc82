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
#include <string>
#include <variant>
#include <vector>

#include "cpqt/channels.hpp"

namespace cpqt {

enum class ChannelRole { Observed, Unobserved };

using ChannelSpec = std::variant<JumpChannel, DiffusiveChannel>;

struct ChannelSlot {
  ChannelSpec spec;
  ChannelRole role = ChannelRole::Observed;

  bool is_jump() const { return std::holds_alternative<JumpChannel>(spec); }
  const JumpChannel& jump() const { return std::get<JumpChannel>(spec); }
  const DiffusiveChannel& diffusive() const { return std::get<DiffusiveChannel>(spec); }
  /// c for a jump channel, b for a diffusive one.
  const Operator& lindblad() const;
};

struct SystemSpec {
  Operator hamiltonian;
  std::vector<ChannelSlot> channels;
  double dt = 5e-3;
  double t_final = 5.0;
  std::uint64_t seed = 1;
  DensityOperator initial = DensityOperator::basis_state(2, 1);
  /// Moments used to sample true diffusive outcomes.
  SchemeOrder diffusive_sampling = SchemeOrder::CPQT;

  Index dim() const { return hamiltonian.rows(); }
  /// T / dt, which must be integral within 1e-9.
  Index steps() const;
  /// Throws on inconsistent dimensions, rates or grids.
  void validate() const;
  std::vector<Operator> lindblads() const;
};

enum class RecordKind { Counts, Current };

struct MeasurementRecord {
  std::size_t channel = 0;
  RecordKind kind = RecordKind::Counts;
  /// Delta n_t in {0, 1} for counts, y_t for currents; one per step.
  std::vector<double> values;
};

struct Trajectory {
  /// Normalized states at step boundaries 0, stride, 2 stride, ... and T.
  std::vector<DensityOperator> states;
  /// log Tr of the unnormalized state at the same boundaries (hypothetical
  /// mode only).
  std::vector<double> log_traces;
  std::vector<MeasurementRecord> records;
  bool normalized = true;
  Index stride = 1;
};

/// Driven, damped two-level atom: H = (Omega/2) sigma_x, jump channel
/// c = sqrt(gamma) sigma_- then homodyne channel b = sqrt(Gamma) sigma_-,
/// gamma = Upsilon (1 - eta), Gamma = Upsilon eta.
struct QubitModelParams {
  double omega = 3.0;
  double upsilon = 1.0;
  double eta = 0.5;
  double phi = 0.0;
  /// Ostensible rate; <= 0 selects default_ostensible_rate.
  double lambda = 0.0;
  double dt = 5e-3;
  double t_final = 5.0;
  std::uint64_t seed = 1;
  /// "g", "e", "+", "+i" or "mixed".
  std::string initial = "g";
  ChannelRole jump_role = ChannelRole::Observed;
  ChannelRole diffusive_role = ChannelRole::Observed;
  SchemeOrder diffusive_sampling = SchemeOrder::CPQT;
};

inline constexpr std::size_t kJumpChannel = 0;
inline constexpr std::size_t kDiffusiveChannel = 1;

SystemSpec make_qubit_model(const QubitModelParams& p);

DensityOperator qubit_state(const std::string& name);

}  // namespace cpqt

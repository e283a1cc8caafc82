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

#include "cpqt/system.hpp"

#include <cmath>

#include "cpqt/errors.hpp"

namespace cpqt {

const Operator& ChannelSlot::lindblad() const {
  return is_jump() ? jump().c : diffusive().b;
}

Index SystemSpec::steps() const {
  if (!(dt > 0.0)) throw InvalidStepSize("SystemSpec: dt must be positive");
  if (t_final < 0.0) throw InvalidArgument("SystemSpec: negative t_final");
  const double ratio = t_final / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw InvalidArgument("SystemSpec: T / dt is not an integer");
  }
  return static_cast<Index>(rounded);
}

void SystemSpec::validate() const {
  steps();
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() == 0 ||
      hamiltonian.rows() > kMaxDim) {
    throw DimensionMismatch("SystemSpec: bad Hamiltonian shape");
  }
  if (hermiticity_error(hamiltonian) > 1e-12) throw NonHermitian("SystemSpec: H not Hermitian");
  require_same_dim(hamiltonian, initial.matrix(), "SystemSpec initial state");
  for (const auto& slot : channels) {
    require_same_dim(hamiltonian, slot.lindblad(), "SystemSpec channel");
    if (slot.is_jump()) {
      if (!(slot.jump().lambda > 0.0)) throw InvalidArgument("SystemSpec: lambda must be positive");
      ostensible_jump_prob(slot.jump(), dt);
    }
  }
}

std::vector<Operator> SystemSpec::lindblads() const {
  std::vector<Operator> out;
  for (const auto& slot : channels) out.push_back(slot.lindblad());
  return out;
}

DensityOperator qubit_state(const std::string& name) {
  StateVector psi(2);
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "e") {
    psi << 1.0, 0.0;
  } else if (name == "g") {
    psi << 0.0, 1.0;
  } else if (name == "+") {
    psi << r, r;
  } else if (name == "+i") {
    psi << r, cplx(0.0, r);
  } else if (name == "mixed") {
    return DensityOperator::maximally_mixed(2);
  } else {
    throw InvalidArgument("qubit_state: unknown state '" + name + "'");
  }
  return DensityOperator::pure(psi);
}

SystemSpec make_qubit_model(const QubitModelParams& p) {
  if (p.omega < 0.0 || p.upsilon < 0.0) throw InvalidArgument("qubit model: negative rate");
  if (p.eta < 0.0 || p.eta > 1.0) throw InvalidArgument("qubit model: eta outside [0, 1]");
  SystemSpec s;
  s.hamiltonian = 0.5 * p.omega * qubit::sigma_x();
  const Operator c = std::sqrt(p.upsilon * (1.0 - p.eta)) * qubit::sigma_minus();
  const Operator b = std::sqrt(p.upsilon * p.eta) * qubit::sigma_minus();
  const double lambda = p.lambda > 0.0 ? p.lambda : default_ostensible_rate(c);
  s.channels.push_back({JumpChannel{c, lambda}, p.jump_role});
  s.channels.push_back({DiffusiveChannel{b, p.phi}, p.diffusive_role});
  s.dt = p.dt;
  s.t_final = p.t_final;
  s.seed = p.seed;
  s.initial = qubit_state(p.initial);
  s.diffusive_sampling = p.diffusive_sampling;
  s.validate();
  return s;
}

}  // namespace cpqt

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

#include "cpqt/density_operator.hpp"

namespace cpqt {

/// Tr[rho^2] / (Tr rho)^2; equals Tr[rho^2] for a normalized state.
double purity(const DensityOperator& rho);
double purity(const Operator& rho);

/// Tr[rho rho_pure]. Throws InvalidArgument if rho_pure is not pure to 1e-9.
double fidelity_to_pure(const DensityOperator& rho,
                        const DensityOperator& rho_pure);

/// (Tr[sigma_x rho], Tr[sigma_y rho], Tr[sigma_z rho]); qubits only.
BlochVector bloch(const DensityOperator& rho);
BlochVector bloch(const Operator& rho);

/// Returns (rho_tilde / Tr rho_tilde, Tr rho_tilde). Throws WeightUnderflow
/// when the trace is below kTraceUnderflowFloor.
std::pair<DensityOperator, double> normalize(const DensityOperator& rho_tilde);

}  // namespace cpqt

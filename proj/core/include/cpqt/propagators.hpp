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

#include <vector>

#include "cpqt/density_operator.hpp"

namespace cpqt {

enum class ExpMethod { Auto, ClosedForm, Pade };

/// V = exp(-i H dt). `Auto` takes the closed form for N = 2 and the
/// scaling-and-squaring Pade exponential otherwise. Throws NonHermitian.
Operator unitary_of_hamiltonian(const Operator& h, double dt,
                                ExpMethod method = ExpMethod::Auto);

/// Lindblad generator acting on column-major vec(rho):
/// vec(A X B) = (B^T kron A) vec(X).
SuperOperator liouvillian(const Operator& h,
                          const std::vector<Operator>& lindblads);

/// exp(L t) as an N^2 x N^2 matrix.
SuperOperator liouvillian_exponential(const SuperOperator& l, double t);

Operator apply_superoperator(const SuperOperator& s, const Operator& rho);

/// rho(t) = exp(L t) rho0.
DensityOperator liouvillian_propagate(const Operator& h,
                                      const std::vector<Operator>& lindblads,
                                      const DensityOperator& rho0, double t);

}  // namespace cpqt

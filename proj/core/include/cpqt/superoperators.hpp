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

#include "cpqt/density_operator.hpp"
#include "cpqt/linalg.hpp"

namespace cpqt {

/// Denominators Tr[c rho c^dag] at or below this value count as a dark state.
inline constexpr double kDarkStateTolerance = 1e-14;

/// D[a] rho = a rho a^dag - 1/2 {a^dag a, rho}
Operator dissipator(const Operator& a, const Operator& rho);
Operator dissipator(const Operator& a, const DensityOperator& rho);

/// Heisenberg-picture adjoint of the dissipator:
/// D^dag[a] E = a^dag E a - 1/2 {a^dag a, E}.
Operator dissipator_adjoint(const Operator& a, const Operator& effect);

/// G[c] rho = c rho c^dag / Tr[c rho c^dag] - rho.  Throws DarkStateJump when
/// the denominator vanishes.
Operator superop_G(const Operator& c, const Operator& rho);
Operator superop_G(const Operator& c, const DensityOperator& rho);

/// H[c] rho = (c - <c>) rho + h.c., with <c> = Tr[c rho].
Operator superop_H(const Operator& c, const Operator& rho);
Operator superop_H(const Operator& c, const DensityOperator& rho);

/// M rho M^dag
inline Operator sandwich(const Operator& m, const Operator& rho) {
  Operator out = m * rho * m.adjoint();
  return out;
}

}  // namespace cpqt

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

#include "cpqt/superoperators.hpp"

#include "cpqt/errors.hpp"

namespace cpqt {

Operator dissipator(const Operator& a, const Operator& rho) {
  require_same_dim(a, rho, "dissipator");
  const Operator ada = a.adjoint() * a;
  Operator out = a * rho * a.adjoint() - 0.5 * (ada * rho + rho * ada);
  return out;
}

Operator dissipator(const Operator& a, const DensityOperator& rho) {
  return dissipator(a, rho.matrix());
}

Operator dissipator_adjoint(const Operator& a, const Operator& effect) {
  require_same_dim(a, effect, "dissipator_adjoint");
  const Operator ada = a.adjoint() * a;
  Operator out = a.adjoint() * effect * a - 0.5 * (ada * effect + effect * ada);
  return out;
}

Operator superop_G(const Operator& c, const Operator& rho) {
  require_same_dim(c, rho, "superop_G");
  const Operator jumped = sandwich(c, rho);
  const double norm = jumped.trace().real();
  if (!(norm > kDarkStateTolerance)) {
    throw DarkStateJump("superop_G: Tr[c rho c^dag] vanishes (jump from dark state)");
  }
  Operator out = jumped / norm - rho;
  return out;
}

Operator superop_G(const Operator& c, const DensityOperator& rho) {
  return superop_G(c, rho.matrix());
}

Operator superop_H(const Operator& c, const Operator& rho) {
  require_same_dim(c, rho, "superop_H");
  const cplx mean = trace_product(c, rho);
  Operator shifted = c;
  shifted.diagonal().array() -= mean;
  const Operator half = shifted * rho;
  Operator out = half + half.adjoint();
  return out;
}

Operator superop_H(const Operator& c, const DensityOperator& rho) {
  return superop_H(c, rho.matrix());
}

}  // namespace cpqt

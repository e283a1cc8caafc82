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

#include "cpqt/metrics.hpp"

#include <cmath>

#include "cpqt/errors.hpp"

namespace cpqt {

double purity(const Operator& rho) {
  const double tr = rho.trace().real();
  return trace_product(rho, rho).real() / (tr * tr);
}

double purity(const DensityOperator& rho) { return purity(rho.matrix()); }

double fidelity_to_pure(const DensityOperator& rho,
                        const DensityOperator& rho_pure) {
  require_same_dim(rho.matrix(), rho_pure.matrix(), "fidelity_to_pure");
  if (std::abs(purity(rho_pure) - 1.0) > 1e-9) {
    throw InvalidArgument("fidelity_to_pure: reference state is not pure");
  }
  return trace_product(rho.matrix(), rho_pure.matrix()).real() /
         (rho.trace() * rho_pure.trace());
}

BlochVector bloch(const Operator& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw DimensionMismatch("bloch: only defined for a qubit");
  }
  const double tr = rho.trace().real();
  const cplx coherence = rho(0, 1) / tr;
  return BlochVector{2.0 * coherence.real(), -2.0 * coherence.imag(),
                     (rho(0, 0).real() - rho(1, 1).real()) / tr};
}

BlochVector bloch(const DensityOperator& rho) { return bloch(rho.matrix()); }

std::pair<DensityOperator, double> normalize(const DensityOperator& rho_tilde) {
  const double tr = rho_tilde.trace();
  if (!(tr > kTraceUnderflowFloor) || !std::isfinite(tr)) {
    throw WeightUnderflow("normalize: trace below underflow floor");
  }
  Operator m = rho_tilde.matrix() / tr;
  return {DensityOperator::unchecked(std::move(m), DensityOperator::Kind::Normalized), tr};
}

}  // namespace cpqt

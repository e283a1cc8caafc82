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

#include <random>

#include "cpqt/density_operator.hpp"
#include "cpqt/linalg.hpp"

namespace cpqt::test {

inline Operator random_operator(std::mt19937_64& g, Index n) {
  std::normal_distribution<double> d;
  Operator m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = cplx(d(g), d(g));
  return m;
}

inline Operator random_hermitian(std::mt19937_64& g, Index n) {
  return hermitize(random_operator(g, n));
}

// Random full-rank state: A A^dag / Tr.
inline DensityOperator random_state(std::mt19937_64& g, Index n) {
  const Operator a = random_operator(g, n);
  Operator rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityOperator::validated(rho, DensityOperator::Kind::Normalized);
}

inline DensityOperator random_pure(std::mt19937_64& g, Index n) {
  std::normal_distribution<double> d;
  StateVector psi(n);
  for (Index i = 0; i < n; ++i) psi(i) = cplx(d(g), d(g));
  psi.normalize();
  return DensityOperator::pure(psi);
}

}  // namespace cpqt::test

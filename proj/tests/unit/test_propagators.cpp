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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cpqt/errors.hpp"
#include "cpqt/propagators.hpp"
#include "cpqt/superoperators.hpp"
#include "test_support.hpp"

namespace cpqt {
namespace {

TEST(Unitary, ClosedFormMatchesPade) {
  std::mt19937_64 g(11);
  for (int i = 0; i < 50; ++i) {
    const Operator h = test::random_hermitian(g, 2) * (1.0 + 10.0 * i);
    for (double dt : {1e-4, 5e-3, 0.3}) {
      const Operator a = unitary_of_hamiltonian(h, dt, ExpMethod::ClosedForm);
      const Operator b = unitary_of_hamiltonian(h, dt, ExpMethod::Pade);
      EXPECT_LT(max_abs(a - b), 1e-12);
      EXPECT_LT(max_abs(a * a.adjoint() - identity(2)), 1e-13);
    }
  }
}

TEST(Unitary, DegenerateHamiltonian) {
  const Operator h = 2.5 * identity(2);
  const Operator v = unitary_of_hamiltonian(h, 0.1, ExpMethod::ClosedForm);
  EXPECT_LT(max_abs(v - std::exp(cplx(0, -0.25)) * identity(2)), 1e-15);
}

TEST(Unitary, RejectsNonHermitian) {
  EXPECT_THROW(unitary_of_hamiltonian(qubit::sigma_minus(), 0.1), NonHermitian);
}

TEST(Unitary, RabiFlip) {
  // (Omega / 2) sigma_x for t = pi / Omega maps |g> to |e> up to phase.
  const double omega = 3.0;
  const Operator v = unitary_of_hamiltonian(0.5 * omega * qubit::sigma_x(), std::numbers::pi / omega);
  EXPECT_NEAR(std::abs(v(0, 1)), 1.0, 1e-14);
}

TEST(Liouvillian, DecayOfExcitedPopulation) {
  const auto rho = liouvillian_propagate(Operator::Zero(2, 2), {qubit::sigma_minus()},
                                         DensityOperator::basis_state(2, 0), 1.0);
  EXPECT_NEAR(rho(0, 0).real(), std::exp(-1.0), 1e-13);
  EXPECT_NEAR(rho(1, 1).real(), 1.0 - std::exp(-1.0), 1e-13);
}

Operator generator(const Operator& h, const std::vector<Operator>& ls, const Operator& rho) {
  Operator out = -cplx(0, 1) * commutator(h, rho);
  for (const auto& l : ls) out += dissipator(l, rho);
  return out;
}

TEST(Liouvillian, MatchesRungeKuttaOracle) {
  std::mt19937_64 g(2);
  const Operator h = test::random_hermitian(g, 3);
  const std::vector<Operator> ls = {0.7 * test::random_operator(g, 3),
                                    0.4 * test::random_operator(g, 3)};
  const auto rho0 = test::random_state(g, 3);
  Operator rho = rho0.matrix();
  const int n = 4000;
  const double t = 1.0, dt = t / n;
  for (int k = 0; k < n; ++k) {
    const Operator k1 = generator(h, ls, rho);
    const Operator k2 = generator(h, ls, rho + 0.5 * dt * k1);
    const Operator k3 = generator(h, ls, rho + 0.5 * dt * k2);
    const Operator k4 = generator(h, ls, rho + dt * k3);
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const auto exact = liouvillian_propagate(h, ls, rho0, t);
  EXPECT_LT(max_abs(exact.matrix() - rho), 1e-10);
}

}  // namespace
}  // namespace cpqt

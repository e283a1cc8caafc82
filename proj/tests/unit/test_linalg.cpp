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

#include "cpqt/errors.hpp"
#include "cpqt/metrics.hpp"
#include "cpqt/superoperators.hpp"
#include "test_support.hpp"

namespace cpqt {
namespace {

TEST(Linalg, TraceProductMatchesProductTrace) {
  std::mt19937_64 g(3);
  const Operator a = test::random_operator(g, 3), b = test::random_operator(g, 3);
  EXPECT_LT(std::abs(trace_product(a, b) - (a * b).trace()), 1e-12);
}

TEST(Linalg, DimensionMismatchThrows) {
  EXPECT_THROW(trace_product(identity(2), identity(3)), DimensionMismatch);
  EXPECT_THROW(dissipator(identity(2), identity(3)), DimensionMismatch);
}

TEST(Linalg, PauliAlgebra) {
  using namespace qubit;
  EXPECT_LT(max_abs(commutator(sigma_x(), sigma_y()) - cplx(0, 2) * sigma_z()), 1e-15);
  EXPECT_LT(max_abs(sigma_minus() * excited_projector() - sigma_minus()), 1e-15);
  EXPECT_LT(max_abs(sigma_plus() * sigma_minus() - excited_projector()), 1e-15);
}

TEST(DensityOperator, ValidationRejectsBadStates) {
  Operator m = identity(2);
  EXPECT_THROW(DensityOperator::validated(m, DensityOperator::Kind::Normalized), InvalidState);
  m = 0.5 * identity(2);
  m(0, 1) = 0.3;
  EXPECT_THROW(DensityOperator::validated(m, DensityOperator::Kind::Normalized), Error);
  m(1, 0) = 0.3;
  EXPECT_NO_THROW(DensityOperator::validated(m, DensityOperator::Kind::Normalized));
  m(0, 1) = m(1, 0) = 0.8;  // negative eigenvalue
  EXPECT_THROW(DensityOperator::validated(m, DensityOperator::Kind::Normalized), InvalidState);
}

TEST(Metrics, PurityAndBloch) {
  EXPECT_DOUBLE_EQ(purity(DensityOperator::maximally_mixed(2)), 0.5);
  EXPECT_DOUBLE_EQ(purity(DensityOperator::basis_state(2, 1)), 1.0);
  const BlochVector e = bloch(DensityOperator::basis_state(2, 0));
  EXPECT_DOUBLE_EQ(e.z, 1.0);
  StateVector plus_i(2);
  plus_i << 1.0 / std::sqrt(2.0), cplx(0, 1.0 / std::sqrt(2.0));
  const BlochVector b = bloch(DensityOperator::pure(plus_i));
  EXPECT_NEAR(b.x, 0.0, 1e-15);
  EXPECT_NEAR(b.y, 1.0, 1e-15);
  EXPECT_NEAR(b.z, 0.0, 1e-15);
}

TEST(Metrics, FidelityNeedsPureReference) {
  const auto g = DensityOperator::basis_state(2, 1);
  EXPECT_DOUBLE_EQ(fidelity_to_pure(DensityOperator::maximally_mixed(2), g), 0.5);
  EXPECT_THROW(fidelity_to_pure(g, DensityOperator::maximally_mixed(2)), InvalidArgument);
}

TEST(Metrics, NormalizeUnderflow) {
  const auto tiny = DensityOperator::unchecked(1e-300 * identity(2),
                                               DensityOperator::Kind::Unnormalized);
  EXPECT_THROW(normalize(tiny), WeightUnderflow);
  const auto [rho, tr] = normalize(DensityOperator::unchecked(
      3.0 * identity(2), DensityOperator::Kind::Unnormalized));
  EXPECT_DOUBLE_EQ(tr, 6.0);
  EXPECT_DOUBLE_EQ(rho.trace(), 1.0);
}

// Frozen worked examples for sigma_-.
TEST(Superoperators, DissipatorOfExcitedState) {
  const Operator sm = qubit::sigma_minus();
  const Operator d = dissipator(sm, qubit::excited_projector());
  Operator expect = Operator::Zero(2, 2);
  expect(0, 0) = -1.0;
  expect(1, 1) = 1.0;
  EXPECT_LT(max_abs(d - expect), 1e-15);
  // Coherences decay at half the rate.
  Operator coh = Operator::Zero(2, 2);
  coh(0, 1) = 1.0;
  EXPECT_LT(max_abs(dissipator(sm, coh) + 0.5 * coh), 1e-15);
}

TEST(Superoperators, DissipatorIsTracelessAndAdjointPairs) {
  std::mt19937_64 g(7);
  for (int i = 0; i < 20; ++i) {
    const Operator a = test::random_operator(g, 3);
    const Operator rho = test::random_state(g, 3).matrix();
    const Operator e = test::random_hermitian(g, 3);
    EXPECT_LT(std::abs(dissipator(a, rho).trace()), 1e-12);
    const cplx lhs = trace_product(e, dissipator(a, rho));
    const cplx rhs = trace_product(dissipator_adjoint(a, e), rho);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST(Superoperators, GAndH) {
  const Operator sm = qubit::sigma_minus();
  const Operator e = qubit::excited_projector();
  // G jumps |e> to |g>.
  EXPECT_LT(max_abs(superop_G(sm, e) - (qubit::ground_projector() - e)), 1e-15);
  EXPECT_THROW(superop_G(sm, qubit::ground_projector()), DarkStateJump);
  std::mt19937_64 g(5);
  const Operator rho = test::random_state(g, 2).matrix();
  const Operator h = superop_H(sm, rho);
  EXPECT_LT(std::abs(h.trace()), 1e-14);
  EXPECT_LT(hermiticity_error(h), 1e-15);
}

}  // namespace
}  // namespace cpqt

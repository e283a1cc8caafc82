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

#include <atomic>
#include <cmath>

#include "cpqt/errors.hpp"
#include "cpqt/metrics.hpp"
#include "cpqt/parallel.hpp"
#include "cpqt/rng.hpp"
#include "cpqt/trajectory.hpp"
#include "test_support.hpp"

namespace cpqt {
namespace {

TEST(Rng, SubstreamsAreReproducibleAndDistinct) {
  RandomStream a(5, StreamTag::True, {3}), b(5, StreamTag::True, {3});
  RandomStream c(5, StreamTag::True, {4}), d(5, StreamTag::Euler, {3});
  const double x = a.uniform();
  EXPECT_EQ(x, b.uniform());
  EXPECT_NE(x, c.uniform());
  EXPECT_NE(x, d.uniform());
}

TEST(Rng, BernoulliAlwaysConsumesOneDraw) {
  RandomStream a(1, StreamTag::True), b(1, StreamTag::True);
  a.bernoulli(0.0);
  b.uniform();
  EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(Parallel, VisitsEveryIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 3, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 2,
                            [](std::size_t i) {
                              if (i == 7) throw InvalidArgument("boom");
                            }),
               InvalidArgument);
}

TEST(SystemSpec, Validation) {
  QubitModelParams p;
  p.t_final = 1.0;
  p.dt = 0.3;
  EXPECT_THROW(make_qubit_model(p), Error);
  p.dt = 0.25;
  EXPECT_EQ(make_qubit_model(p).steps(), 4);
  p.eta = 1.5;
  EXPECT_THROW(make_qubit_model(p), Error);
  EXPECT_THROW(qubit_state("x"), InvalidArgument);
}

TEST(TrueTrajectory, PurityAndTraceExact) {
  for (double eta : {0.0, 0.5, 1.0}) {
    QubitModelParams params;
    params.eta = eta;
    params.initial = "+";
    const PreparedSpec p(make_qubit_model(params));
    const Trajectory t = run_trajectory(p, Mode::True);
    ASSERT_EQ(t.states.size(), static_cast<std::size_t>(p.steps() + 1));
    for (const auto& rho : t.states) {
      EXPECT_LT(std::abs(purity(rho) - 1.0), 1e-12);
      EXPECT_LT(std::abs(rho.trace() - 1.0), 1e-12);
    }
    ASSERT_EQ(t.records.size(), 2u);
    EXPECT_EQ(t.records[kJumpChannel].values.size(), static_cast<std::size_t>(p.steps()));
    EXPECT_EQ(t.records[kDiffusiveChannel].kind, RecordKind::Current);
  }
}

TEST(TrueTrajectory, StrideKeepsFinalState) {
  QubitModelParams params;
  params.t_final = 1.0;
  const PreparedSpec p(make_qubit_model(params));  // 200 steps
  const Trajectory full = run_trajectory(p, Mode::True, RunInputs{nullptr, 2, 1});
  const Trajectory thin = run_trajectory(p, Mode::True, RunInputs{nullptr, 2, 30});
  ASSERT_EQ(thin.states.size(), 8u);  // 0, 30, ..., 180, 200
  EXPECT_EQ(thin.states.back().matrix(), full.states.back().matrix());
  EXPECT_EQ(thin.states[3].matrix(), full.states[90].matrix());
}

TEST(TrueTrajectory, ZeroDurationHasOnlyInitialState) {
  QubitModelParams params;
  params.t_final = 0.0;
  const PreparedSpec p(make_qubit_model(params));
  const Trajectory t = run_trajectory(p, Mode::True);
  EXPECT_EQ(t.states.size(), 1u);
  EXPECT_TRUE(t.records[0].values.empty());
}

TEST(TrueTrajectory, DeterministicPerIndex) {
  const PreparedSpec p(make_qubit_model({}));
  const Trajectory a = run_trajectory(p, Mode::True, RunInputs{nullptr, 9, 1});
  const Trajectory b = run_trajectory(p, Mode::True, RunInputs{nullptr, 9, 1});
  const Trajectory c = run_trajectory(p, Mode::True, RunInputs{nullptr, 10, 1});
  EXPECT_EQ(a.records[1].values, b.records[1].values);
  EXPECT_NE(a.records[1].values, c.records[1].values);
}

TEST(TrueStep, NoJumpFromGroundWithoutDrive) {
  QubitModelParams params;
  params.omega = 0.0;
  params.eta = 0.0;
  const PreparedSpec p(make_qubit_model(params));
  RandomStream rng(1, StreamTag::True);
  auto [rho, out] = true_step(DensityOperator::basis_state(2, 1), p, rng);
  EXPECT_EQ(out[kJumpChannel], 0.0);
  EXPECT_NEAR(rho(1, 1).real(), 1.0, 1e-15);
}

TEST(EulerTrajectory, LeavesPhysicalSet) {
  int above = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    QubitModelParams params;
    params.seed = seed;
    params.eta = 1.0;
    const PreparedSpec p(make_qubit_model(params));
    const Trajectory t = run_trajectory(p, Mode::Euler);
    double worst = 0.0;
    for (const auto& rho : t.states) worst = std::max(worst, purity(rho));
    above += worst > 1.0 + 1e-12;
  }
  EXPECT_GE(above, 4);
}

TEST(Unconditioned, MatchesHandComposition) {
  QubitModelParams params;
  params.initial = "+i";
  const PreparedSpec p(make_qubit_model(params));
  const Operator rho = qubit_state("+i").matrix();
  Operator expect = p.unitary() * rho * p.unitary().adjoint();
  for (const auto& ch : p.spec().channels) expect = unconditional_map(ch.lindblad(), expect, p.dt());
  EXPECT_LT(max_abs(unconditioned_step(rho, p) - hermitize(expect)), 1e-15);
}

}  // namespace
}  // namespace cpqt

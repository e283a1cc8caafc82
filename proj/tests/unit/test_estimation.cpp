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
#include <memory>
#include <numbers>

#include "cpqt/conditioned_model.hpp"
#include "cpqt/errors.hpp"
#include "cpqt/estimation.hpp"
#include "cpqt/metrics.hpp"
#include "test_support.hpp"

namespace cpqt {
namespace {

QubitModelParams small_model(ChannelRole jump, ChannelRole diffusive, double t_final = 1.0) {
  QubitModelParams p;
  p.omega = 5.0;
  p.phi = std::numbers::pi / 2;
  p.t_final = t_final;
  p.jump_role = jump;
  p.diffusive_role = diffusive;
  return p;
}

ConditionedModel model_for(const QubitModelParams& params, std::uint64_t index = 0) {
  const SystemSpec spec = make_qubit_model(params);
  const PreparedSpec p(spec);
  const Trajectory truth = run_trajectory(p, Mode::True, RunInputs{nullptr, index, 1});
  return ConditionedModel(p, truth.records);
}

TEST(NEff, FrozenValues) {
  EXPECT_DOUBLE_EQ(n_eff({2.0, 1.0, 1.0}), 16.0 / 6.0);
  EXPECT_DOUBLE_EQ(n_eff({1.0, 1.0, 1.0, 1.0}), 4.0);
  EXPECT_DOUBLE_EQ(n_eff({0.0, 3.0}), 1.0);
  EXPECT_THROW(n_eff({0.0, 0.0}), InsufficientEnsemble);
  EXPECT_THROW(n_eff({1.0, -1.0}), InvalidArgument);
}

TEST(WeightedSums, LogScaleMergeMatchesDirect) {
  std::mt19937_64 g(8);
  WeightedSums all, left, right;
  std::vector<double> w;
  for (int i = 0; i < 40; ++i) {
    const auto rho = test::random_state(g, 2);
    const double lw = -700.0 + 3.0 * i;  // far below the double range for small i
    const double z = rho(0, 0).real() - rho(1, 1).real();
    all.add(lw, rho.matrix(), z);
    (i < 17 ? left : right).add(lw, rho.matrix(), z);
    w.push_back(std::exp(lw - (-700.0 + 3.0 * 39)));
  }
  left.merge(right);
  const EnsemblePoint a = finalize(all, 0), b = finalize(left, 0);
  EXPECT_NEAR(a.n_eff, n_eff(w), 1e-12);
  EXPECT_NEAR(a.n_eff, b.n_eff, 1e-12);
  EXPECT_LT(max_abs(a.state.matrix() - b.state.matrix()), 1e-14);
  EXPECT_EQ(all.members, 40u);
}

TEST(Filter, ReproducesTrueStateWhenEverythingIsObserved) {
  const auto params = small_model(ChannelRole::Observed, ChannelRole::Observed);
  const PreparedSpec p(make_qubit_model(params));
  const Trajectory truth = run_trajectory(p, Mode::True, RunInputs{nullptr, 3, 1});
  const FilteredTrajectory f = filter(ConditionedModel(p, truth.records));
  ASSERT_EQ(f.states.size(), truth.states.size());
  for (std::size_t k = 0; k < f.states.size(); ++k) {
    EXPECT_LT(max_abs(f.states[k].matrix() - truth.states[k].matrix()), 1e-10);
  }
}

TEST(Filter, UnobservedEverythingGivesUnconditionedState) {
  const auto params = small_model(ChannelRole::Unobserved, ChannelRole::Unobserved);
  const ConditionedModel model = model_for(params);
  const FilteredTrajectory f = filter(model);
  DensityOperator rho = make_qubit_model(params).initial;
  for (Index k = 0; k < model.steps(); ++k) rho = unconditioned_step(rho, model.prepared());
  EXPECT_LT(max_abs(f.states.back().matrix() - rho.matrix()), 1e-12);
  EXPECT_NEAR(f.log_traces.back(), 0.0, 1e-12);
}

TEST(Retrofilter, ThreeStepPairingByHand) {
  auto params = small_model(ChannelRole::Observed, ChannelRole::Unobserved);
  params.t_final = 3 * params.dt;
  const ConditionedModel model = model_for(params, 4);
  const EffectTrajectory e = retrofilter(model);
  ASSERT_EQ(e.effects.size(), 4u);
  EXPECT_LT(max_abs(e.effect(3) - identity(2)), 1e-15);
  Operator rho = make_qubit_model(params).initial.matrix();
  std::vector<Operator> fwd = {rho};
  for (Index k = 0; k < 3; ++k) fwd.push_back(model.forward(k, fwd.back()));
  const double total = fwd[3].trace().real();
  for (Index k = 0; k <= 3; ++k) {
    EXPECT_NEAR(trace_product(fwd[k], e.effect(k)).real() / total, 1.0, 1e-14);
  }
  // E(2) written out: the adjoint of the last step applied to 1.
  EXPECT_LT(max_abs(e.effect(2) - model.adjoint(2, identity(2))), 1e-14);
}

TEST(ConditionedModel, RandomInputAdjointPairing) {
  std::mt19937_64 g(21);
  for (auto roles : {std::pair{ChannelRole::Observed, ChannelRole::Unobserved},
                     std::pair{ChannelRole::Unobserved, ChannelRole::Observed},
                     std::pair{ChannelRole::Observed, ChannelRole::Observed}}) {
    const ConditionedModel model = model_for(small_model(roles.first, roles.second), 1);
    for (Index k = 0; k < model.steps(); k += 37) {
      // States and effects are Hermitian; forward() hermitizes its output.
      const Operator rho = test::random_hermitian(g, 2);
      const Operator e = test::random_hermitian(g, 2);
      const cplx lhs = trace_product(e, model.forward(k, rho));
      const cplx rhs = trace_product(model.adjoint(k, e), rho);
      EXPECT_LT(std::abs(lhs - rhs), 1e-13 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST(Retrofilter, PairingConstantOverInterval) {
  const ConditionedModel model =
      model_for(small_model(ChannelRole::Unobserved, ChannelRole::Observed, 3.0), 2);
  const EffectConsistency ec = effect_consistency(filter(model), retrofilter(model));
  EXPECT_LT(ec.max_relative_drift, 1e-10);
}

class Ensemble : public ::testing::Test {
 protected:
  void SetUp() override {
    model_ = std::make_unique<ConditionedModel>(
        model_for(small_model(ChannelRole::Unobserved, ChannelRole::Observed), 5));
    filtered_ = filter(*model_);
    plan_ = std::make_unique<HypotheticalPlan>(*model_, filtered_);
  }
  std::unique_ptr<ConditionedModel> model_;
  FilteredTrajectory filtered_;
  std::unique_ptr<HypotheticalPlan> plan_;
};

TEST_F(Ensemble, IdentityEffectSmoothingEqualsFilterPathBitwise) {
  const EffectTrajectory ones = identity_effects(2, model_->steps());
  const EnsembleSummary s = summarize_ensemble(*plan_, &ones, EnsembleOptions{150, 10, 1});
  ASSERT_EQ(s.filter.size(), s.smoothed.size());
  for (std::size_t i = 0; i < s.filter.size(); ++i) {
    EXPECT_EQ(s.filter[i].state.matrix(), s.smoothed[i].state.matrix());
    EXPECT_EQ(s.filter[i].n_eff, s.smoothed[i].n_eff);
  }
  const HypotheticalEnsemble ens = generate_ensemble(*plan_, 150, 10);
  const SmoothedTrajectory sm = smooth(ens, ones);
  const ConsistencyTrace a = filter_consistency(ens, filtered_);
  const ConsistencyTrace b = filter_consistency(s, filtered_);
  for (std::size_t i = 0; i < sm.states.size(); ++i) {
    EXPECT_EQ(sm.states[i].matrix(), s.filter[i].state.matrix());
    EXPECT_EQ(a.dz[i], b.dz[i]);
    EXPECT_EQ(a.se[i], b.se[i]);
  }
}

TEST_F(Ensemble, WorkerCountDoesNotChangeResults) {
  const EffectTrajectory effects = retrofilter(*model_);
  const auto one = summarize_ensemble(*plan_, &effects, EnsembleOptions{200, 20, 1});
  const auto three = summarize_ensemble(*plan_, &effects, EnsembleOptions{200, 20, 3});
  for (std::size_t i = 0; i < one.smoothed.size(); ++i) {
    EXPECT_EQ(one.smoothed[i].state.matrix(), three.smoothed[i].state.matrix());
    EXPECT_EQ(one.filter[i].z_se, three.filter[i].z_se);
  }
}

TEST_F(Ensemble, StartsWithFullEffectiveSize) {
  const auto s = summarize_ensemble(*plan_, nullptr, EnsembleOptions{100, 10, 1});
  EXPECT_NEAR(s.filter.front().n_eff, 100.0, 1e-9);
  EXPECT_LE(s.filter.back().n_eff, 100.0 + 1e-9);
}

TEST_F(Ensemble, MembersReplayObservedRecord) {
  const Trajectory m = run_trajectory(model_->prepared(), Mode::Hypothetical,
                                      RunInputs{plan_.get(), 7, 1});
  for (Index k = 0; k < model_->steps(); k += 50) {
    EXPECT_EQ(m.records[kDiffusiveChannel].values[k],
              model_->observed_outcomes(k)[kDiffusiveChannel]);
  }
  EXPECT_EQ(m.log_traces.size(), m.states.size());
}

}  // namespace
}  // namespace cpqt

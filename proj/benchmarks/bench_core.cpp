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

#include <benchmark/benchmark.h>

#include <numbers>

#include "cpqt/conditioned_model.hpp"
#include "cpqt/estimation.hpp"
#include "cpqt/propagators.hpp"

namespace {

using namespace cpqt;

QubitModelParams fig_params(double t_final) {
  QubitModelParams p;
  p.omega = 5.0;
  p.phi = std::numbers::pi / 2;
  p.t_final = t_final;
  p.jump_role = ChannelRole::Unobserved;
  return p;
}

void BM_TrueStep(benchmark::State& state) {
  const PreparedSpec p(make_qubit_model(fig_params(1.0)));
  RandomStream rng(1, StreamTag::True);
  StepOutcomes out(2);
  Operator rho = qubit_state("+").matrix();
  for (auto _ : state) {
    rho = true_step(rho, p, rng, out);
    benchmark::DoNotOptimize(rho.data());
  }
}
BENCHMARK(BM_TrueStep);

void BM_HypotheticalMemberStep(benchmark::State& state) {
  const PreparedSpec p(make_qubit_model(fig_params(1.0)));
  const Trajectory truth = run_trajectory(p, Mode::True);
  const ConditionedModel model(p, truth.records);
  const FilteredTrajectory f = filter(model);
  const HypotheticalPlan plan(model, f);
  RandomStream rng(1, StreamTag::Hypothetical);
  StepOutcomes out(2);
  Operator rho = p.spec().initial.matrix();
  Index k = 0;
  for (auto _ : state) {
    rho = plan.step(k, rho, rng, out);
    rho /= rho.trace();
    if (++k == plan.steps()) {
      k = 0;
      rho = p.spec().initial.matrix();
    }
    benchmark::DoNotOptimize(rho.data());
  }
}
BENCHMARK(BM_HypotheticalMemberStep);

void BM_FilterAndRetrofilter(benchmark::State& state) {
  const PreparedSpec p(make_qubit_model(fig_params(5.0)));
  const Trajectory truth = run_trajectory(p, Mode::True);
  const ConditionedModel model(p, truth.records);
  for (auto _ : state) {
    auto f = filter(model);
    auto e = retrofilter(model);
    benchmark::DoNotOptimize(f.log_traces.data());
    benchmark::DoNotOptimize(e.log_scales.data());
  }
  state.SetItemsProcessed(state.iterations() * p.steps());
}
BENCHMARK(BM_FilterAndRetrofilter)->Unit(benchmark::kMillisecond);

void BM_Unitary(benchmark::State& state) {
  const auto method = static_cast<ExpMethod>(state.range(0));
  const Operator h = 2.5 * qubit::sigma_x() + 0.3 * qubit::sigma_z();
  for (auto _ : state) {
    Operator v = unitary_of_hamiltonian(h, 5e-3, method);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_Unitary)
    ->Arg(static_cast<int>(ExpMethod::ClosedForm))
    ->Arg(static_cast<int>(ExpMethod::Pade));

void BM_LiouvillianExp(benchmark::State& state) {
  const Operator h = 1.5 * qubit::sigma_x();
  const SuperOperator l = liouvillian(h, {qubit::sigma_minus()});
  for (auto _ : state) {
    SuperOperator s = liouvillian_exponential(l, 5e-3);
    benchmark::DoNotOptimize(s.data());
  }
}
BENCHMARK(BM_LiouvillianExp);

}  // namespace
BENCHMARK_MAIN();

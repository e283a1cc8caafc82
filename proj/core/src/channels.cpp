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

#include "cpqt/channels.hpp"

#include <cmath>

#include "cpqt/errors.hpp"
#include "cpqt/superoperators.hpp"

namespace cpqt {

Operator no_jump_op(const Operator& c, double lambda, double dt, SchemeOrder order) {
  if (lambda < 0.0) throw InvalidArgument("no_jump_op: negative rate");
  const Index n = c.rows();
  Operator k = c.adjoint() * c;
  k.diagonal().array() -= lambda;
  Operator m0 = Operator::Identity(n, n);
  if (order == SchemeOrder::Euler) {
    m0 -= 0.5 * dt * k;
  } else {
    m0 -= (0.5 * (1.0 + lambda * dt) * dt) * k;
    m0 -= (0.125 * dt * dt) * (k * k);
  }
  return m0;
}

JumpOperators jump_ops(const JumpChannel& ch, double dt, SchemeOrder order) {
  if (!(ch.lambda > 0.0)) throw InvalidArgument("jump_ops: lambda must be positive");
  if (ch.lambda * dt >= 1.0) throw InvalidStepSize("jump_ops: lambda dt >= 1");
  Operator m1 = ch.c / std::sqrt(ch.lambda);
  return {no_jump_op(ch.c, ch.lambda, dt, order), std::move(m1)};
}

Operator rotated(const DiffusiveChannel& ch) {
  Operator out = std::polar(1.0, -ch.phi) * ch.b;
  return out;
}

Operator diffusive_base(const DiffusiveChannel& ch, double dt, SchemeOrder order) {
  const Index n = ch.b.rows();
  const Operator bb = ch.b.adjoint() * ch.b;
  Operator a = Operator::Identity(n, n) - 0.5 * dt * bb;
  if (order == SchemeOrder::CPQT) a -= (0.125 * dt * dt) * (bb * bb);
  return a;
}

Operator diffusive_op(const DiffusiveChannel& ch, double y, double dt, SchemeOrder order) {
  Operator m = diffusive_base(ch, dt, order) + (y * dt) * rotated(ch);
  return m;
}

double ostensible_jump_prob(const JumpChannel& ch, double dt) {
  const double p = ch.lambda * dt;
  if (!(p >= 0.0) || p >= 1.0) {
    throw InvalidStepSize("ostensible_jump_prob: lambda dt outside [0, 1)");
  }
  return p;
}

double completeness_residual(const JumpChannel& ch, double dt, SchemeOrder order) {
  const Operator m0 = no_jump_op(ch.c, ch.lambda, dt, order);
  Operator sum = (1.0 - ch.lambda * dt) * (m0.adjoint() * m0) + dt * (ch.c.adjoint() * ch.c);
  sum.diagonal().array() -= 1.0;
  return spectral_norm(sum);
}

double completeness_residual(const DiffusiveChannel& ch, double dt, SchemeOrder order) {
  const Operator a = diffusive_base(ch, dt, order);
  const Operator b = rotated(ch);
  Operator sum = a.adjoint() * a + dt * (b.adjoint() * b);
  sum.diagonal().array() -= 1.0;
  return spectral_norm(sum);
}

double actual_jump_prob(const JumpChannel& ch, const Operator& rho, double dt) {
  const double p = trace_product(ch.c.adjoint() * ch.c, rho).real() * dt;
  if (p >= 1.0) throw InvalidStepSize("actual_jump_prob: probability reaches one");
  return p;
}

double actual_jump_prob(const JumpChannel& ch, const DensityOperator& rho, double dt) {
  return actual_jump_prob(ch, rho.matrix(), dt);
}

OutcomeMoments actual_diffusive_moments(const DiffusiveChannel& ch, const Operator& rho,
                                        double dt, SchemeOrder order) {
  if (!(dt > 0.0)) throw InvalidStepSize("actual_diffusive_moments: dt must be positive");
  const Operator b = rotated(ch);
  const Operator bb = ch.b.adjoint() * ch.b;
  const double r = trace_product(b, rho).real();
  OutcomeMoments m;
  if (order == SchemeOrder::Euler) {
    m.mean = 2.0 * r;
    m.variance = 1.0 / dt;
    return m;
  }
  const double n = trace_product(bb, rho).real();
  const double mu = 2.0 * r - trace_product(bb * b, rho).real() * dt;
  m.mean = mu;
  m.variance = 1.0 / dt + 2.0 * n - mu * mu;
  if (!(m.variance > 0.0)) {
    throw InvalidStepSize("actual_diffusive_moments: non-positive variance");
  }
  m.skewness = (2.0 * mu * mu * mu - 6.0 * mu * n) * std::pow(dt, 1.5);
  m.excess_kurtosis = (24.0 * mu * mu * n - 6.0 * std::pow(mu, 4) - 12.0 * n * n) * dt * dt;
  return m;
}

OutcomeMoments actual_diffusive_moments(const DiffusiveChannel& ch, const DensityOperator& rho,
                                        double dt, SchemeOrder order) {
  return actual_diffusive_moments(ch, rho.matrix(), dt, order);
}

double default_ostensible_rate(const Operator& c) {
  const double mixed = (c.adjoint() * c).trace().real() / static_cast<double>(c.rows());
  if (mixed > 0.0) return mixed;
  const double norm = spectral_norm(c);
  if (norm > 0.0) return norm * norm;
  return 1.0;
}

Operator unconditional_map(const Operator& a, const Operator& rho, double dt) {
  const Operator ada = a.adjoint() * a;
  Operator out = rho + dt * dissipator(a, rho) + (0.25 * dt * dt) * dissipator(ada, rho);
  return out;
}

Operator unconditional_map_adjoint(const Operator& a, const Operator& effect, double dt) {
  const Operator ada = a.adjoint() * a;
  Operator out = effect + dt * dissipator_adjoint(a, effect) +
                 (0.25 * dt * dt) * dissipator_adjoint(ada, effect);
  return out;
}

}  // namespace cpqt

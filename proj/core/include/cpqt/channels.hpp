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

namespace cpqt {

/// Photodetection: Lindblad operator c with ostensible jump rate lambda.
struct JumpChannel {
  Operator c;
  double lambda = 1.0;
};

/// Homodyne detection of b with local-oscillator phase phi.
struct DiffusiveChannel {
  Operator b;
  double phi = 0.0;
};

enum class SchemeOrder { Euler, CPQT };

struct OutcomeMoments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

struct JumpOperators {
  Operator no_jump;  // M0
  Operator jump;     // M1
};

/// M0 for rate lambda >= 0. CPQT:
///   1 - (c^dag c - lambda)(1 + lambda dt) dt / 2 - (c^dag c - lambda)^2 dt^2 / 8
/// Euler keeps the first-order term only.
Operator no_jump_op(const Operator& c, double lambda, double dt, SchemeOrder order);

/// (M0, M1) with M1 = c / sqrt(lambda). Throws InvalidArgument for lambda <= 0
/// and InvalidStepSize for lambda dt >= 1.
JumpOperators jump_ops(const JumpChannel& ch, double dt, SchemeOrder order);

/// e^{-i phi} b, the operator whose quadrature is measured.
Operator rotated(const DiffusiveChannel& ch);

/// y-independent part of M_y: 1 - b^dag b dt / 2 (- (b^dag b)^2 dt^2 / 8 for CPQT).
Operator diffusive_base(const DiffusiveChannel& ch, double dt, SchemeOrder order);

/// M_y = diffusive_base + y dt e^{-i phi} b.
Operator diffusive_op(const DiffusiveChannel& ch, double y, double dt, SchemeOrder order);

/// lambda dt. Throws InvalidStepSize unless it lies in [0, 1).
double ostensible_jump_prob(const JumpChannel& ch, double dt);

/// || (1 - lambda dt) M0^dag M0 + dt c^dag c - 1 ||_2
double completeness_residual(const JumpChannel& ch, double dt, SchemeOrder order);

/// || A^dag A + dt B^dag B - 1 ||_2, with M_y = A + y dt B integrated in
/// closed form against N(0, 1/dt).
double completeness_residual(const DiffusiveChannel& ch, double dt, SchemeOrder order);

/// Tr[c^dag c rho] dt. Throws InvalidStepSize when it reaches 1.
double actual_jump_prob(const JumpChannel& ch, const DensityOperator& rho, double dt);
double actual_jump_prob(const JumpChannel& ch, const Operator& rho, double dt);

/// Moments of the actual distribution of y. With B = e^{-i phi} b,
/// n = <b^dag b>, R = Re<B>:
///   Euler: mean 2R, variance 1/dt, Gaussian higher moments.
///   CPQT:  mu = 2R - Re<b^dag b B> dt, sigma^2 = 1/dt + 2n - mu^2,
///          gamma1 = (2 mu^3 - 6 mu n) dt^{3/2},
///          gamma2 - 3 = (24 mu^2 n - 6 mu^4 - 12 n^2) dt^2.
/// Throws InvalidStepSize if the variance is not positive.
OutcomeMoments actual_diffusive_moments(const DiffusiveChannel& ch,
                                        const DensityOperator& rho, double dt,
                                        SchemeOrder order);
OutcomeMoments actual_diffusive_moments(const DiffusiveChannel& ch,
                                        const Operator& rho, double dt,
                                        SchemeOrder order);

/// Tr[c^dag c] / N (maximally mixed reference), falling back to ||c||^2 and
/// then to 1 when c vanishes.
double default_ostensible_rate(const Operator& c);

/// Second-order unconditional map rho + D[a] rho dt + D[a^dag a] rho dt^2 / 4.
Operator unconditional_map(const Operator& a, const Operator& rho, double dt);

/// Its adjoint E + D^dag[a] E dt + D^dag[a^dag a] E dt^2 / 4.
Operator unconditional_map_adjoint(const Operator& a, const Operator& effect, double dt);

}  // namespace cpqt

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

#include <vector>

#include "cpqt/channels.hpp"

namespace cpqt {

struct QuadratureOptions {
  int nodes = 2001;
  double half_width_sigmas = 8.0;
  /// Relative change allowed when the node count is doubled.
  double convergence_tol = 1e-9;
};

/// Moments of p(y) proportional to N(y; 0, 1/dt) Tr[M_y rho M_y^dag] by the
/// trapezoid rule over +/- 8 sigma. Throws QuadratureError if doubling the
/// node count moves any moment by more than the tolerance.
OutcomeMoments quadrature_moments(const DiffusiveChannel& ch, const Operator& rho, double dt,
                                  SchemeOrder order = SchemeOrder::CPQT,
                                  const QuadratureOptions& opts = {});

struct SufficiencyRow {
  double dt = 0.0;
  OutcomeMoments quadrature;
  OutcomeMoments formula;
  /// || E_gauss[rho_y] - E_exact[rho_y] ||_max with rho_y the normalized
  /// post-measurement state and E_gauss drawing y from N(mu, sigma^2).
  double map_deviation = 0.0;
};

struct GaussianSufficiencyReport {
  std::vector<SufficiencyRow> rows;
  double skewness_exponent = 0.0;
  double kurtosis_exponent = 0.0;
  double map_exponent = 0.0;
  bool skewness_vanishes = false;
  bool kurtosis_vanishes = false;
  bool skewness_pass = false;
  bool kurtosis_pass = false;
  bool pass() const { return skewness_pass && kurtosis_pass; }
};

/// Fits log|gamma1| and log|gamma2 - 3| against log dt. A moment that is
/// below 1e-12 at every dt counts as vanishing and passes. Otherwise the
/// exponents must reach 1.3 and 0.8 (decay at least as fast as dt^1.5 and
/// dt^1, less 0.2). Throws InvalidArgument unless dt_list is decreasing with
/// at least two entries.
GaussianSufficiencyReport gaussian_sufficiency_check(const DiffusiveChannel& ch,
                                                     const DensityOperator& rho,
                                                     const std::vector<double>& dt_list);

/// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cpqt

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

#include "cpqt/gaussian_sufficiency.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cpqt/errors.hpp"
#include "cpqt/superoperators.hpp"

namespace cpqt {
namespace {

struct Grid {
  std::vector<double> y;
  std::vector<double> w;  // trapezoid weight times N(y; 0, 1/dt)
};

Grid gaussian_grid(double dt, const QuadratureOptions& opts, int nodes) {
  const double sigma = 1.0 / std::sqrt(dt);
  const double lo = -opts.half_width_sigmas * sigma;
  const double h = 2.0 * opts.half_width_sigmas * sigma / (nodes - 1);
  Grid g;
  g.y.resize(nodes);
  g.w.resize(nodes);
  const double norm = std::sqrt(dt / (2.0 * std::numbers::pi));
  for (int i = 0; i < nodes; ++i) {
    const double y = lo + h * i;
    g.y[i] = y;
    g.w[i] = h * norm * std::exp(-0.5 * y * y * dt) * ((i == 0 || i == nodes - 1) ? 0.5 : 1.0);
  }
  return g;
}

OutcomeMoments moments_on_grid(const DiffusiveChannel& ch, const Operator& rho, double dt,
                               SchemeOrder order, const Grid& g) {
  const Operator a = diffusive_base(ch, dt, order);
  const Operator b = rotated(ch);
  // Tr[M_y rho M_y^dag] = p0 + p1 y + p2 y^2
  const double p0 = trace_product(a * rho, a.adjoint()).real();
  const double p1 = 2.0 * dt * trace_product(b * rho, a.adjoint()).real();
  const double p2 = dt * dt * trace_product(b * rho, b.adjoint()).real();

  std::vector<double> p(g.y.size());
  double z = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < g.y.size(); ++i) {
    const double y = g.y[i];
    p[i] = g.w[i] * (p0 + y * (p1 + y * p2));
    z += p[i];
    s1 += p[i] * y;
  }
  const double mean = s1 / z;
  double c2 = 0.0, c3 = 0.0, c4 = 0.0;
  for (std::size_t i = 0; i < g.y.size(); ++i) {
    const double d = g.y[i] - mean;
    const double d2 = d * d;
    c2 += p[i] * d2;
    c3 += p[i] * d2 * d;
    c4 += p[i] * d2 * d2;
  }
  c2 /= z;
  c3 /= z;
  c4 /= z;
  return {mean, c2, c3 / std::pow(c2, 1.5), c4 / (c2 * c2) - 3.0};
}

double rel_change(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// Average over y of the normalized post-measurement state, y drawn from the
// exact p(y) (closed form A rho A^dag + dt B rho B^dag) or from a Gaussian
// with the formula mean and variance.
double map_deviation(const DiffusiveChannel& ch, const Operator& rho, double dt,
                     const OutcomeMoments& m, const QuadratureOptions& opts) {
  const Operator a = diffusive_base(ch, dt, SchemeOrder::CPQT);
  const Operator b = rotated(ch);
  Operator exact = a * rho * a.adjoint() + dt * (b * rho * b.adjoint());
  exact /= exact.trace();

  const double sigma = std::sqrt(m.variance);
  const int nodes = opts.nodes * 4 + 1;
  const double h = 2.0 * opts.half_width_sigmas * sigma / (nodes - 1);
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  Operator gauss = Operator::Zero(rho.rows(), rho.cols());
  double total = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double u = -opts.half_width_sigmas * sigma + h * i;
    const double w = h * norm * std::exp(-0.5 * u * u / m.variance) *
                     ((i == 0 || i == nodes - 1) ? 0.5 : 1.0);
    const Operator my = a + ((m.mean + u) * dt) * b;
    Operator post = my * rho * my.adjoint();
    post /= post.trace();
    gauss += w * post;
    total += w;
  }
  gauss /= total;
  return max_abs(gauss - exact);
}

}  // namespace

OutcomeMoments quadrature_moments(const DiffusiveChannel& ch, const Operator& rho, double dt,
                                  SchemeOrder order, const QuadratureOptions& opts) {
  if (!(dt > 0.0)) throw InvalidArgument("quadrature_moments: dt must be positive");
  if (opts.nodes < 3) throw InvalidArgument("quadrature_moments: too few nodes");
  const OutcomeMoments coarse =
      moments_on_grid(ch, rho, dt, order, gaussian_grid(dt, opts, opts.nodes));
  const OutcomeMoments fine =
      moments_on_grid(ch, rho, dt, order, gaussian_grid(dt, opts, 2 * opts.nodes - 1));
  // Higher moments are compared on the scale of the Gaussian values (0 and 3).
  const bool converged =
      std::abs(coarse.mean - fine.mean) <= opts.convergence_tol * std::max(1.0, std::abs(fine.mean)) &&
      rel_change(coarse.variance, fine.variance) <= opts.convergence_tol &&
      std::abs(coarse.skewness - fine.skewness) <= opts.convergence_tol &&
      std::abs(coarse.excess_kurtosis - fine.excess_kurtosis) <= 3.0 * opts.convergence_tol;
  if (!converged) throw QuadratureError("quadrature_moments: node doubling changed the result");
  return fine;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("loglog_slope: need at least two points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GaussianSufficiencyReport gaussian_sufficiency_check(const DiffusiveChannel& ch,
                                                     const DensityOperator& rho,
                                                     const std::vector<double>& dt_list) {
  if (dt_list.size() < 2) throw InvalidArgument("gaussian_sufficiency_check: need two or more dt");
  for (std::size_t i = 1; i < dt_list.size(); ++i) {
    if (!(dt_list[i] < dt_list[i - 1])) {
      throw InvalidArgument("gaussian_sufficiency_check: dt_list must be decreasing");
    }
  }
  GaussianSufficiencyReport rep;
  std::vector<double> skew, kurt, dev;
  for (double dt : dt_list) {
    SufficiencyRow row;
    row.dt = dt;
    row.quadrature = quadrature_moments(ch, rho.matrix(), dt);
    row.formula = actual_diffusive_moments(ch, rho, dt, SchemeOrder::CPQT);
    row.map_deviation = map_deviation(ch, rho.matrix(), dt, row.formula, {});
    skew.push_back(row.quadrature.skewness);
    kurt.push_back(row.quadrature.excess_kurtosis);
    dev.push_back(row.map_deviation);
    rep.rows.push_back(row);
  }
  constexpr double kVanish = 1e-12;
  auto vanishes = [&](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return std::abs(x) < kVanish; });
  };
  rep.skewness_vanishes = vanishes(skew);
  rep.kurtosis_vanishes = vanishes(kurt);
  rep.skewness_exponent = rep.skewness_vanishes ? NAN : loglog_slope(dt_list, skew);
  rep.kurtosis_exponent = rep.kurtosis_vanishes ? NAN : loglog_slope(dt_list, kurt);
  rep.map_exponent = vanishes(dev) ? NAN : loglog_slope(dt_list, dev);
  rep.skewness_pass = rep.skewness_vanishes || rep.skewness_exponent >= 1.3;
  rep.kurtosis_pass = rep.kurtosis_vanishes || rep.kurtosis_exponent >= 0.8;
  return rep;
}

}  // namespace cpqt

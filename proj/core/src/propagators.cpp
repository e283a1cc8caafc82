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

#include "cpqt/propagators.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "cpqt/errors.hpp"

namespace cpqt {
namespace {

void require_hermitian(const Operator& h, const char* what) {
  if (h.rows() != h.cols()) throw DimensionMismatch(std::string(what) + ": H not square");
  if (hermiticity_error(h) > 1e-12) {
    throw NonHermitian(std::string(what) + ": Hamiltonian is not Hermitian");
  }
}

// H = h0 1 + h.sigma, so exp(-i H dt) = e^{-i h0 dt}(cos|h|dt - i sin(|h|dt) h.sigma/|h|).
Operator closed_form_qubit(const Operator& h, double dt) {
  const double h0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double hz = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double norm = std::sqrt(hz * hz + std::norm(h(0, 1)));
  const double theta = norm * dt;
  // sin(theta)/norm, stable as norm -> 0
  const double s = theta < 1e-8 ? dt * (1.0 - theta * theta / 6.0) : std::sin(theta) / norm;
  Operator traceless = h;
  traceless(0, 0) -= h0;
  traceless(1, 1) -= h0;
  Operator v = std::cos(theta) * Operator::Identity(2, 2) - cplx(0.0, s) * traceless;
  return std::polar(1.0, -h0 * dt) * v;
}

}  // namespace

Operator unitary_of_hamiltonian(const Operator& h, double dt, ExpMethod method) {
  require_hermitian(h, "unitary_of_hamiltonian");
  if (method == ExpMethod::ClosedForm && h.rows() != 2) {
    throw InvalidArgument("unitary_of_hamiltonian: closed form needs N = 2");
  }
  if (method == ExpMethod::ClosedForm ||
      (method == ExpMethod::Auto && h.rows() == 2)) {
    return closed_form_qubit(h, dt);
  }
  Eigen::MatrixXcd a = cplx(0.0, -dt) * Eigen::MatrixXcd(h);
  Operator v = a.exp();
  return v;
}

SuperOperator liouvillian(const Operator& h,
                          const std::vector<Operator>& lindblads) {
  require_hermitian(h, "liouvillian");
  const Index n = h.rows();
  const Eigen::MatrixXcd hd = h;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const cplx i(0.0, 1.0);
  SuperOperator l = -i * Eigen::kroneckerProduct(id, hd) +
                    i * Eigen::kroneckerProduct(hd.transpose(), id);
  for (const auto& op : lindblads) {
    require_same_dim(h, op, "liouvillian");
    const Eigen::MatrixXcd a = op;
    const Eigen::MatrixXcd ada = a.adjoint() * a;
    l += Eigen::kroneckerProduct(a.conjugate(), a);
    l -= 0.5 * Eigen::kroneckerProduct(id, ada);
    l -= 0.5 * Eigen::kroneckerProduct(ada.transpose(), id);
  }
  return l;
}

SuperOperator liouvillian_exponential(const SuperOperator& l, double t) {
  if (t < 0.0) throw InvalidArgument("liouvillian_exponential: t < 0");
  SuperOperator scaled = l * t;
  return scaled.exp();
}

Operator apply_superoperator(const SuperOperator& s, const Operator& rho) {
  const Index n = rho.rows();
  if (s.rows() != n * n) throw DimensionMismatch("apply_superoperator");
  Eigen::VectorXcd v(n * n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) v(j * n + i) = rho(i, j);
  const Eigen::VectorXcd out = s * v;
  Operator r(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) r(i, j) = out(j * n + i);
  return r;
}

DensityOperator liouvillian_propagate(const Operator& h,
                                      const std::vector<Operator>& lindblads,
                                      const DensityOperator& rho0, double t) {
  if (t < 0.0) throw InvalidArgument("liouvillian_propagate: t < 0");
  const SuperOperator l = liouvillian(h, lindblads);
  if (t == 0.0) return rho0;
  Operator rho = hermitize(apply_superoperator(liouvillian_exponential(l, t), rho0.matrix()));
  return DensityOperator::unchecked(std::move(rho), rho0.kind());
}

}  // namespace cpqt

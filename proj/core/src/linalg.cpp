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

#include "cpqt/linalg.hpp"

#include <algorithm>
#include <string>

#include "cpqt/errors.hpp"

namespace cpqt {

Operator identity(Index n) { return Operator::Identity(n, n); }

Operator zero_operator(Index n) { return Operator::Zero(n, n); }

double hermiticity_error(const Operator& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("hermiticity_error: operator is not square");
  }
  double worst = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return worst;
}

Operator hermitize(const Operator& a) {
  Operator out = 0.5 * (a + a.adjoint());
  return out;
}

double max_abs(const Operator& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

double spectral_norm(const Operator& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Operator> svd(a);
  return svd.singularValues()(0);
}

cplx trace_product(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "trace_product");
  cplx acc{0.0, 0.0};
  for (Index i = 0; i < a.rows(); ++i) {
    acc += a.row(i).transpose().cwiseProduct(b.col(i)).sum();
  }
  return acc;
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  Operator out = a * b - b * a;
  return out;
}

Operator anticommutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "anticommutator");
  Operator out = a * b + b * a;
  return out;
}

double min_eigenvalue(const Operator& a) {
  Operator h = hermitize(a);
  Eigen::SelfAdjointEigenSolver<Operator> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch (" +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + ")");
  }
}

namespace qubit {

Operator sigma_minus() {
  Operator m = Operator::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

Operator sigma_plus() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Operator sigma_x() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Operator sigma_y() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}

Operator sigma_z() {
  Operator m = Operator::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Operator excited_projector() {
  Operator m = Operator::Zero(2, 2);
  m(0, 0) = 1.0;
  return m;
}

Operator ground_projector() {
  Operator m = Operator::Zero(2, 2);
  m(1, 1) = 1.0;
  return m;
}

}  // namespace qubit

}  // namespace cpqt

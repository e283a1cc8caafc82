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

#include "cpqt/density_operator.hpp"

#include <cmath>
#include <sstream>

#include "cpqt/errors.hpp"

namespace cpqt {

DensityOperator DensityOperator::validated(Operator m, Kind kind,
                                           const StateTolerances& tol) {
  DensityOperator out(std::move(m), kind);
  if (auto why = out.violation(tol); !why.empty()) {
    throw InvalidState("DensityOperator: " + why);
  }
  return out;
}

DensityOperator DensityOperator::unchecked(Operator m, Kind kind) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("DensityOperator: matrix must be square and non-empty");
  }
  return DensityOperator(std::move(m), kind);
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) throw InvalidState("DensityOperator::pure: zero vector");
  Operator m = (psi * psi.adjoint()) / n2;
  return DensityOperator(std::move(m), Kind::Normalized);
}

DensityOperator DensityOperator::maximally_mixed(Index n) {
  Operator m = Operator::Identity(n, n) / static_cast<double>(n);
  return DensityOperator(std::move(m), Kind::Normalized);
}

DensityOperator DensityOperator::basis_state(Index n, Index i) {
  if (i < 0 || i >= n) throw InvalidArgument("basis_state: index out of range");
  Operator m = Operator::Zero(n, n);
  m(i, i) = 1.0;
  return DensityOperator(std::move(m), Kind::Normalized);
}

std::string DensityOperator::violation(const StateTolerances& tol) const {
  std::ostringstream why;
  if (m_.rows() != m_.cols() || m_.rows() == 0) return "not square";
  if (m_.rows() > kMaxDim) return "dimension exceeds kMaxDim";

  const double herm = hermiticity_error(m_);
  if (herm > tol.hermiticity) {
    why << "not Hermitian (error " << herm << ")";
    return why.str();
  }
  const cplx tr = m_.trace();
  if (!(tr.real() > 0.0)) {
    why << "trace " << tr.real() << " is not positive";
    return why.str();
  }
  if (kind_ == Kind::Normalized && std::abs(tr.real() - 1.0) > tol.trace) {
    why << "trace " << tr.real() << " differs from one";
    return why.str();
  }
  const double lmin = min_eigenvalue(m_);
  if (lmin < -tol.eigenvalue * tr.real()) {
    why << "negative eigenvalue " << lmin;
    return why.str();
  }
  const double pur = trace_product(m_, m_).real() / (tr.real() * tr.real());
  if (pur > 1.0 + tol.purity) {
    why << "purity " << pur << " exceeds one";
    return why.str();
  }
  return {};
}

}  // namespace cpqt

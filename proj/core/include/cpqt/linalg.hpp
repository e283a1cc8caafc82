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

#include <complex>

#include <Eigen/Dense>

namespace cpqt {

using cplx = std::complex<double>;

/// Largest Hilbert-space dimension supported by Operator.
inline constexpr int kMaxDim = 16;

/// Dense complex N x N matrix with inline storage (N <= kMaxDim), so small
/// products never touch the heap.
using Operator = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::ColMajor, kMaxDim, kMaxDim>;
using StateVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1, Eigen::ColMajor,
                                  kMaxDim, 1>;

/// Superoperators act on column-major vec(rho), dimension N^2.
using SuperOperator = Eigen::MatrixXcd;

using Index = Eigen::Index;

Operator identity(Index n);
Operator zero_operator(Index n);

/// max_ij |a_ij - conj(a_ji)|
double hermiticity_error(const Operator& a);

/// (a + a^dag) / 2
Operator hermitize(const Operator& a);

double max_abs(const Operator& a);

/// Largest singular value.
double spectral_norm(const Operator& a);

/// Tr[a b] without forming the product.
cplx trace_product(const Operator& a, const Operator& b);

inline cplx expectation(const Operator& op, const Operator& rho) {
  return trace_product(op, rho);
}

/// a b - b a
Operator commutator(const Operator& a, const Operator& b);

/// a b + b a
Operator anticommutator(const Operator& a, const Operator& b);

/// Smallest eigenvalue of the Hermitian part of `a`.
double min_eigenvalue(const Operator& a);

void require_same_dim(const Operator& a, const Operator& b, const char* what);

/// Two-level atom in the (|e>, |g>) = (0, 1) basis; sigma_minus = |g><e|.
namespace qubit {
Operator sigma_minus();
Operator sigma_plus();
Operator sigma_x();
Operator sigma_y();
Operator sigma_z();
Operator excited_projector();
Operator ground_projector();
}  // namespace qubit

}  // namespace cpqt

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

#include <string>

#include "cpqt/linalg.hpp"

namespace cpqt {

/// Tolerances used when a DensityOperator is validated.
struct StateTolerances {
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double eigenvalue = 1e-10;
  double purity = 1e-12;
};

/// Trace floor below which an unnormalized state carries no usable weight.
inline constexpr double kTraceUnderflowFloor = 1e-280;

/// A density matrix rho (trace one) or an unnormalized rho-tilde.
///
/// Immutable after construction. `validated` construction checks
/// Hermiticity, trace, positivity and purity bounds; `unchecked` skips the
/// eigen-decomposition and is meant for inner loops and for the Euler
/// baseline, whose states are allowed to leave the physical set.
class DensityOperator {
 public:
  enum class Kind { Normalized, Unnormalized };

  static DensityOperator validated(Operator m, Kind kind,
                                   const StateTolerances& tol = {});
  static DensityOperator unchecked(Operator m, Kind kind);

  static DensityOperator pure(const StateVector& psi);
  static DensityOperator maximally_mixed(Index n);
  /// |i><i| in an n-dimensional space.
  static DensityOperator basis_state(Index n, Index i);

  const Operator& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }
  bool normalized() const { return kind_ == Kind::Normalized; }
  Kind kind() const { return kind_; }
  cplx operator()(Index i, Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  /// Empty string when every invariant holds, otherwise a description.
  std::string violation(const StateTolerances& tol = {}) const;

 private:
  DensityOperator(Operator m, Kind kind) : m_(std::move(m)), kind_(kind) {}

  Operator m_;
  Kind kind_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm_squared() const { return x * x + y * y + z * z; }
};

}  // namespace cpqt

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

#include <stdexcept>
#include <string>

namespace cpqt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonHermitian : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

/// A jump was requested from a state with Tr[c rho c^dag] == 0.
class DarkStateJump : public Error {
 public:
  using Error::Error;
};

/// Trace of an unnormalized state fell below the underflow floor.
class WeightUnderflow : public Error {
 public:
  using Error::Error;
};

/// Step size too large for a probability or variance to stay valid.
class InvalidStepSize : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Every hypothetical member weight underflowed at some reporting time.
class InsufficientEnsemble : public Error {
 public:
  using Error::Error;
};

}  // namespace cpqt

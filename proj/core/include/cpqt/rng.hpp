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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cpqt {

/// Purpose tags mixed into every stream key.
enum class StreamTag : std::uint64_t {
  True = 1,
  Euler = 2,
  Hypothetical = 3,
  Experiment = 4,
};

/// Independent substream keyed by (seed, tag, indices...). The key words are
/// fed through std::seed_seq, so distinct keys give decorrelated
/// mt19937_64 states and a stream never depends on scheduling.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, StreamTag tag, std::initializer_list<std::uint64_t> indices = {});

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  /// Consumes exactly one uniform draw whatever p is.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace cpqt

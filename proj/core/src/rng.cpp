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

#include "cpqt/rng.hpp"

#include <vector>

namespace cpqt {
namespace {

void push_words(std::vector<std::uint32_t>& out, std::uint64_t v) {
  out.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
  out.push_back(static_cast<std::uint32_t>(v >> 32));
}

std::mt19937_64 seeded_engine(std::uint64_t seed, StreamTag tag,
                              std::initializer_list<std::uint64_t> indices) {
  std::vector<std::uint32_t> words;
  push_words(words, seed);
  push_words(words, static_cast<std::uint64_t>(tag));
  for (auto i : indices) push_words(words, i);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, StreamTag tag,
                           std::initializer_list<std::uint64_t> indices)
    : engine_(seeded_engine(seed, tag, indices)) {}

}  // namespace cpqt

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

#include <cstddef>
#include <functional>

namespace cpqt {

/// Calls fn(i) for i in [0, n) on up to `workers` threads (0 means
/// std::thread::hardware_concurrency). Tasks are claimed from a shared
/// counter; the first exception thrown is rethrown after all threads join.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace cpqt

// Copyright 2026 The bellmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace bellmc::engine {

template <typename Tally, typename Fn>
Tally parallel_tally(std::int64_t n, int num_threads, Fn per_range) {
  num_threads = std::max(1, num_threads);
  const int chunks = static_cast<int>(
      std::min<std::int64_t>(n > 0 ? n : 1, num_threads));

  std::vector<Tally> partial(static_cast<std::size_t>(chunks));
  if (chunks == 1) {
    partial[0] = per_range(std::int64_t{0}, n);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(chunks));
    for (int c = 0; c < chunks; ++c) {
      const std::int64_t begin = n * c / chunks;
      const std::int64_t end = n * (c + 1) / chunks;
      workers.emplace_back([&, c, begin, end] {
        partial[static_cast<std::size_t>(c)] = per_range(begin, end);
      });
    }
    for (auto& w : workers) w.join();
  }

  Tally merged = partial[0];
  for (std::size_t c = 1; c < partial.size(); ++c) merged += partial[c];
  return merged;
}

}  // namespace bellmc::engine

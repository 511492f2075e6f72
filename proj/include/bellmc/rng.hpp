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

#include <array>
#include <cstdint>

namespace bellmc {

namespace detail {

// Philox2x64-10 keyed counter permutation. Stateless: every (key, counter)
// pair maps to an independent 128-bit block, so draws can be evaluated in any
// order and from any thread without coordination.
inline std::array<std::uint64_t, 2> philox2x64(std::uint64_t key,
                                               std::array<std::uint64_t, 2> ctr) {
  constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
  constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;
  for (int round = 0; round < 10; ++round) {
    const auto product = static_cast<unsigned __int128>(kMultiplier) * ctr[0];
    const auto hi = static_cast<std::uint64_t>(product >> 64);
    const auto lo = static_cast<std::uint64_t>(product);
    ctr = {hi ^ key ^ ctr[1], lo};
    key += kWeyl;
  }
  return ctr;
}

}  // namespace detail

// Purpose tag separating the independent random streams of one experiment.
enum class Stream : std::uint64_t {
  kDetection = 1,
  kOutcome = 2,
  kAssignment = 3,
};

/// Value-type random stream. Every draw is a pure function of
/// (seed, stream tag, stream index, draw counter); copying the stream copies
/// its position.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, Stream stream, std::uint64_t index)
      : seed_(seed),
        stream_((static_cast<std::uint64_t>(stream) << 56) | index) {}

  std::uint64_t next_u64() {
    return detail::philox2x64(seed_, {counter_++, stream_})[0];
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace bellmc

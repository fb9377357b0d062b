// Copyright 2026 The vhvlab Authors
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

#include <cstdint>
#include <numbers>

namespace vhv {

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, index, draw), so splitting a run across tasks cannot change it.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
      : key_(mix(mix(mix(seed) ^ (stream * 0xD1B54A32D192ED03ULL)) ^ index)) {}

  std::uint64_t next_u64() { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform angle on [0, pi).
  double angle() { return std::numbers::pi * uniform(); }

  bool coin() { return (next_u64() >> 63) != 0; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Stream tags keep independent quantities in one experiment decorrelated.
namespace streams {
inline constexpr std::uint64_t kBooleanLambda = 1;
inline constexpr std::uint64_t kHvAngle = 2;
inline constexpr std::uint64_t kBellAverage = 3;
inline constexpr std::uint64_t kSwapPairs = 4;
inline constexpr std::uint64_t kGhzPulse = 5;
inline constexpr std::uint64_t kHomTrial = 6;
}  // namespace streams

}  // namespace vhv

// Copyright 2026 The cvwit Authors
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

#ifndef CVWIT_RNG_HPP
#define CVWIT_RNG_HPP

#include <array>
#include <cstdint>

namespace cvwit {

/// Counter-based Philox4x32-10 generator.
///
/// Keyed by (seed, stream): distinct streams are statistically independent
/// sequences, so worker threads can draw from disjoint streams and the
/// aggregate result is independent of how batches are assigned to threads.
/// The 64-bit stream id occupies the upper half of the 128-bit counter; the
/// lower half counts blocks within the stream.
class Philox4x32 {
 public:
  Philox4x32(uint64_t seed, uint64_t stream);

  uint32_t next_u32();
  uint64_t next_u64();

  /// Uniform double in (0, 1]; never returns 0 so log() is safe.
  double uniform01();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller (pair-cached).
  double normal();
  double normal(double mean, double stddev);

  /// Uniform integer in [0, n). n must be positive.
  uint64_t below(uint64_t n);

  // UniformRandomBitGenerator interface.
  using result_type = uint32_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xFFFFFFFFu; }
  result_type operator()() { return next_u32(); }

 private:
  void refill();

  std::array<uint32_t, 2> key_;
  std::array<uint32_t, 4> counter_;
  std::array<uint32_t, 4> block_;
  int block_pos_;
  double cached_normal_;
  bool has_cached_normal_;
};

/// Roles used to derive disjoint stream ids for the estimation pipeline.
enum class StreamRole : uint32_t {
  kGeneric = 0,
  kChi = 1,
  kChiPilot = 2,
  kX = 3,
  kXPilot = 4,
  kZeta = 5,
  kZetaPilot = 6,
  kZ = 7,
  kZPilot = 8,
};

/// Stream id for (role, index); index is typically a batch number.
inline uint64_t make_stream(StreamRole role, uint32_t index) {
  return (static_cast<uint64_t>(role) << 32) | index;
}

}  // namespace cvwit

#endif

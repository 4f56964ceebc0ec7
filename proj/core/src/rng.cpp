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

#include "cvwit/rng.hpp"

#include <cassert>
#include <cmath>

namespace cvwit {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;
constexpr double kTwoPi = 6.283185307179586476925286766559;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t* hi, uint32_t* lo) {
  uint64_t product = static_cast<uint64_t>(a) * b;
  *hi = static_cast<uint32_t>(product >> 32);
  *lo = static_cast<uint32_t>(product);
}

inline void philox_round(std::array<uint32_t, 4>& ctr,
                         const std::array<uint32_t, 2>& key) {
  uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kPhiloxM0, ctr[0], &hi0, &lo0);
  mulhilo(kPhiloxM1, ctr[2], &hi1, &lo1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

Philox4x32::Philox4x32(uint64_t seed, uint64_t stream)
    : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
      counter_{0, 0, static_cast<uint32_t>(stream),
               static_cast<uint32_t>(stream >> 32)},
      block_pos_(4),
      cached_normal_(0.0),
      has_cached_normal_(false) {}

void Philox4x32::refill() {
  std::array<uint32_t, 4> ctr = counter_;
  std::array<uint32_t, 2> key = key_;
  for (int round = 0; round < 10; round++) {
    philox_round(ctr, key);
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  block_ = ctr;
  block_pos_ = 0;
  // 64-bit block index within the stream; the upper two words are the
  // stream id and stay fixed.
  if (++counter_[0] == 0) ++counter_[1];
}

uint32_t Philox4x32::next_u32() {
  if (block_pos_ >= 4) refill();
  return block_[block_pos_++];
}

uint64_t Philox4x32::next_u64() {
  uint64_t lo = next_u32();
  uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double Philox4x32::uniform01() {
  // 53 random bits mapped to (0, 1]: (v + 1) / 2^53 with v in [0, 2^53).
  uint64_t v = next_u64() >> 11;
  return static_cast<double>(v + 1) * (1.0 / 9007199254740992.0);
}

double Philox4x32::uniform(double lo, double hi) {
  return lo + (hi - lo) * (uniform01() - (1.0 / 9007199254740992.0));
}

double Philox4x32::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform01();
  double u2 = uniform01();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = kTwoPi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

double Philox4x32::normal(double mean, double stddev) {
  return mean + stddev * normal();
}

uint64_t Philox4x32::below(uint64_t n) {
  assert(n > 0);
  // Rejection sampling on the top bits keeps the draw unbiased.
  uint64_t threshold = (~uint64_t{0} - n + 1) % n;  // 2^64 mod n
  for (;;) {
    uint64_t v = next_u64();
    if (v >= threshold) return v % n;
  }
}

}  // namespace cvwit

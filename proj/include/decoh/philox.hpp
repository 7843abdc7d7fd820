// Copyright 2026 The decoh authors
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

#include <array>
#include <cmath>
#include <cstdint>

#include "decoh/error.hpp"

namespace decoh {

// Philox4x32-10 counter-based generator. A block of four 32-bit words is a
// pure function of (key, counter), which is what makes trial streams
// independent of scheduling: trial t of seed s always sees the same bits.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block counter, Key key) {
    for (int round = 0; round < 10; ++round) {
      counter = single_round(counter, key);
      key[0] += kWeyl32A;
      key[1] += kWeyl32B;
    }
    return counter;
  }

 private:
  static constexpr std::uint32_t kWeyl32A = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl32B = 0xBB67AE85u;
  static constexpr std::uint32_t kMult4x32A = 0xD2511F53u;
  static constexpr std::uint32_t kMult4x32B = 0xCD9E8D57u;

  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(prod >> 32);
    lo = static_cast<std::uint32_t>(prod);
  }

  static Block single_round(const Block& ctr, const Key& key) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMult4x32A, ctr[0], hi0, lo0);
    mulhilo(kMult4x32B, ctr[2], hi1, lo1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
};

// Per-trial random stream: key is the 64-bit seed, counter carries the trial
// index in its high words and a block counter in its low words.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) : trial_(trial) {
    key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform on the open interval (0, 1); 53 significant bits.
  double uniform01() {
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal, Box-Muller; the paired variate is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape < 1 is lifted to
  // shape + 1 and scaled back by U^(1/shape).
  double gamma(double shape) {
    require(shape > 0.0, Errc::invalid_argument, "gamma shape must be positive");
    if (shape < 1.0) {
      const double u = uniform01();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  void refill() {
    const Philox4x32::Block ctr = {static_cast<std::uint32_t>(block_),
                                   static_cast<std::uint32_t>(block_ >> 32),
                                   static_cast<std::uint32_t>(trial_),
                                   static_cast<std::uint32_t>(trial_ >> 32)};
    buf_ = Philox4x32::generate(ctr, key_);
    ++block_;
    pos_ = 0;
  }

  Philox4x32::Key key_{};
  std::uint64_t trial_ = 0;
  std::uint64_t block_ = 0;
  Philox4x32::Block buf_{};
  int pos_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace decoh

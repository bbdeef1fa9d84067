// Copyright 2026 The crds Authors
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

namespace crds {

/// Philox4x32-10 (Salmon et al., SC'11): a keyed bijection on 128-bit
/// counters. Stateless, so any draw can be recomputed from its coordinates.
namespace philox {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline Counter round(const Counter& c, const Key& k) {
  const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
  const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline Counter philox4x32_10(Counter c, Key k) {
  for (int i = 0; i < 10; ++i) {
    if (i > 0) {
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    c = round(c, k);
  }
  return c;
}

}  // namespace philox

/// Coordinates of one draw: (seed, stream, index). Index is two-sided; its
/// magnitude and sign are encoded separately in the counter.
inline philox::Counter draw_bits(std::uint64_t seed, std::uint64_t stream, std::int64_t index) {
  const std::uint64_t magnitude =
      index < 0 ? ~static_cast<std::uint64_t>(index) + 1u : static_cast<std::uint64_t>(index);
  const std::uint32_t sign = index < 0 ? 0x80000000u : 0u;
  const philox::Counter ctr{static_cast<std::uint32_t>(magnitude),
                            static_cast<std::uint32_t>(magnitude >> 32) ^ sign,
                            static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  const philox::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return philox::philox4x32_10(ctr, key);
}

inline double bits_to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t word = (std::uint64_t{hi} << 32) | lo;
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Uniform on [0,1).
inline double draw_uniform(std::uint64_t seed, std::uint64_t stream, std::int64_t index) {
  const auto bits = draw_bits(seed, stream, index);
  return bits_to_unit(bits[0], bits[1]);
}

/// Standard normal via Box-Muller on the two halves of one counter block.
inline double draw_normal(std::uint64_t seed, std::uint64_t stream, std::int64_t index) {
  const auto bits = draw_bits(seed, stream, index);
  const double u1 = bits_to_unit(bits[0], bits[1]);
  const double u2 = bits_to_unit(bits[2], bits[3]);
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(kTwoPi * u2);
}

}  // namespace crds

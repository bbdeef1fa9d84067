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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "crds/circle.hpp"
#include "crds/homeo.hpp"

namespace crds {

/// Coordinates of a replayable noise realization. Step k >= 1 of the future
/// reads noise index offset + k; indices offset, offset - 1, ... are the past.
struct NoiseKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::int64_t offset = 0;

  NoiseKey shifted(std::int64_t t) const { return {seed, stream, offset + t}; }
  friend bool operator==(const NoiseKey&, const NoiseKey&) = default;
};

/// An independent seed for a sub-experiment, by a splitmix64 finaliser of seed and tag.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// A finite set of generators with strictly positive selection weights.
class IfsModel {
public:
  IfsModel(std::vector<Homeo> generators, std::vector<double> weights);
  static IfsModel singleton(Homeo generator);

  const std::vector<Homeo>& generators() const { return generators_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return generators_.size(); }
  const Homeo& generator(std::size_t i) const { return generators_[i]; }

  /// Generator selected by a uniform draw u in [0,1).
  std::size_t select(double u) const;

private:
  std::vector<Homeo> generators_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

/// An i.i.d. two-sided sequence of uniforms, a pure function of its key.
class NoiseRealization {
public:
  NoiseRealization() = default;
  NoiseRealization(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream, 0} {}
  explicit NoiseRealization(NoiseKey key) : key_(key) {}

  const NoiseKey& key() const { return key_; }
  double uniform(std::int64_t i) const;
  NoiseRealization shift(std::int64_t t) const { return NoiseRealization(key_.shifted(t)); }

  friend bool operator==(const NoiseRealization&, const NoiseRealization&) = default;

private:
  NoiseKey key_{};
};

inline NoiseRealization shift(const NoiseRealization& omega, std::int64_t t) { return omega.shift(t); }

/// Index of the map f_i applied at step i.
std::size_t map_index(const IfsModel& model, const NoiseRealization& omega, std::int64_t i);

/// Row k holds phi(k, omega) applied to every tracked point; row 0 is the input.
class Trajectory {
public:
  Trajectory(std::size_t steps, std::size_t points) : points_(points), data_((steps + 1) * points) {}

  std::size_t steps() const { return data_.size() / (points_ ? points_ : 1) - 1; }
  std::size_t points() const { return points_; }
  std::span<CirclePoint> row(std::size_t k) { return {data_.data() + k * points_, points_}; }
  std::span<const CirclePoint> row(std::size_t k) const { return {data_.data() + k * points_, points_}; }
  CirclePoint at(std::size_t k, std::size_t i) const { return data_[k * points_ + i]; }

private:
  std::size_t points_;
  std::vector<CirclePoint> data_;
};

/// Applies steps first_step + 1 .. first_step + count in place.
void advance(const IfsModel& model, const NoiseRealization& omega, std::int64_t first_step, std::int64_t count,
             std::span<CirclePoint> points);
/// Applies f_i^{-1} for i = first_step + 1 .. first_step + count in place.
void advance_inverse(const IfsModel& model, const NoiseRealization& omega, std::int64_t first_step,
                     std::int64_t count, std::span<CirclePoint> points);

/// n-point motion: one shared realization for every point.
Trajectory evolve(const IfsModel& model, const NoiseRealization& omega, std::span<const CirclePoint> points,
                  std::int64_t steps);

/// Streams the n-point motion step by step without storing it.
using StepVisitor = std::function<void(std::int64_t step, std::span<const CirclePoint> points)>;
void evolve_visit(const IfsModel& model, const NoiseRealization& omega, std::span<const CirclePoint> points,
                  std::int64_t steps, const StepVisitor& visit);

/// Image lengths l(phi(k, omega) J) for k = 0..steps.
std::vector<double> evolve_arc(const IfsModel& model, const NoiseRealization& omega, const Arc& arc,
                               std::int64_t steps);

/// Row k applies f_k^{-1} o ... o f_1^{-1}.
Trajectory inverse_evolve(const IfsModel& model, const NoiseRealization& omega, std::span<const CirclePoint> points,
                          std::int64_t steps);

/// Entry j is phi(m, theta^{-m} omega) y for m = depths[j].
std::vector<CirclePoint> pullback_point(const IfsModel& model, const NoiseRealization& omega, CirclePoint y,
                                        std::span<const std::int64_t> depths);

}  // namespace crds

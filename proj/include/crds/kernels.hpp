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
#include <optional>
#include <vector>

#include "crds/circle.hpp"
#include "crds/system.hpp"

namespace crds {

/// Stream used for auxiliary draws (random start points) of realization i,
/// disjoint from the noise streams 0, 1, 2, ...
inline constexpr std::uint64_t kAuxStream = std::uint64_t{1} << 40;

/// Start point of realization i when none is given: a uniform draw.
CirclePoint random_start(std::uint64_t seed, std::uint64_t realization);

struct OccupationSpec {
  std::uint64_t seed = 0;
  std::size_t realizations = 0;
  std::int64_t burn_in = 0;
  std::int64_t samples = 0;
  std::size_t bins = 64;
  bool reverse = false;                // inverse maps instead of forward maps
  std::optional<CirclePoint> start;    // random_start per realization if empty
};

/// Final distance d(phi(T) x, phi(T) y) for realization streams 0 .. N-1.
struct PairSpec {
  std::uint64_t seed = 0;
  std::size_t realizations = 0;
  std::int64_t horizon = 0;
  CirclePoint x;
  CirclePoint y;
};

// Reference implementations, one realization after another.
namespace serial {
std::vector<std::uint64_t> occupation_counts(const System& system, const OccupationSpec& spec);
std::vector<double> pair_distances(const System& system, const PairSpec& spec);
}  // namespace serial

// OpenMP versions; results are identical to the serial ones for any worker count.
namespace omp {
std::vector<std::uint64_t> occupation_counts(const System& system, const OccupationSpec& spec, int workers);
std::vector<double> pair_distances(const System& system, const PairSpec& spec, int workers);
}  // namespace omp

}  // namespace crds

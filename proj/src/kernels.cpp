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

#include "crds/kernels.hpp"

#include <algorithm>
#include <array>

#include "crds/parallel.hpp"
#include "crds/philox.hpp"

namespace crds {

CirclePoint random_start(std::uint64_t seed, std::uint64_t realization) {
  return CirclePoint(draw_uniform(seed, kAuxStream + realization, 0));
}

namespace {

void check(const System& system, const OccupationSpec& spec) {
  if (spec.bins == 0) throw std::invalid_argument("occupation: bins must be positive");
  if (spec.burn_in < 0 || spec.samples < 0) throw std::invalid_argument("occupation: negative step count");
  if (spec.reverse && !system.is_ifs()) throw Unsupported("reverse occupation needs inverse maps");
}

void occupy_one(const System& system, const OccupationSpec& spec, std::size_t r, std::uint64_t* counts) {
  const NoiseKey key{spec.seed, r, 0};
  std::array<CirclePoint, 1> p{spec.start ? *spec.start : random_start(spec.seed, r)};
  auto step = [&](std::int64_t from, std::int64_t count) {
    if (spec.reverse) {
      system.advance_inverse(key, from, count, p);
    } else {
      system.advance(key, from, count, p);
    }
  };
  step(0, spec.burn_in);
  const double b = static_cast<double>(spec.bins);
  for (std::int64_t k = 1; k <= spec.samples; ++k) {
    step(spec.burn_in + k - 1, 1);
    ++counts[std::min(static_cast<std::size_t>(p[0].value() * b), spec.bins - 1)];
  }
}

double pair_one(const System& system, const PairSpec& spec, std::size_t r) {
  std::array<CirclePoint, 2> p{spec.x, spec.y};
  system.advance(NoiseKey{spec.seed, r, 0}, 0, spec.horizon, p);
  return distance(p[0], p[1]);
}

}  // namespace

namespace serial {

std::vector<std::uint64_t> occupation_counts(const System& system, const OccupationSpec& spec) {
  check(system, spec);
  std::vector<std::uint64_t> counts(spec.bins, 0);
  for (std::size_t r = 0; r < spec.realizations; ++r) occupy_one(system, spec, r, counts.data());
  return counts;
}

std::vector<double> pair_distances(const System& system, const PairSpec& spec) {
  std::vector<double> out(spec.realizations);
  for (std::size_t r = 0; r < spec.realizations; ++r) out[r] = pair_one(system, spec, r);
  return out;
}

}  // namespace serial

namespace omp {

std::vector<std::uint64_t> occupation_counts(const System& system, const OccupationSpec& spec, int workers) {
  check(system, spec);
  std::vector<std::uint64_t> counts(spec.bins, 0);
  std::uint64_t* total = counts.data();
  const std::size_t bins = spec.bins;
  const auto n = static_cast<std::int64_t>(spec.realizations);
  // Integer counts: the reduction order cannot change the result.
#pragma omp parallel num_threads(workers > 0 ? workers : 1)
  {
    std::vector<std::uint64_t> local(bins, 0);
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t r = 0; r < n; ++r) occupy_one(system, spec, static_cast<std::size_t>(r), local.data());
#pragma omp critical
    for (std::size_t i = 0; i < bins; ++i) total[i] += local[i];
  }
  return counts;
}

std::vector<double> pair_distances(const System& system, const PairSpec& spec, int workers) {
  std::vector<double> out(spec.realizations);
  parallel_for(spec.realizations, workers, [&](std::size_t r) { out[r] = pair_one(system, spec, r); });
  return out;
}

}  // namespace omp

}  // namespace crds

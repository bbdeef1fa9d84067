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

// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "crds/kernels.hpp"

namespace {

crds::System kn04() {
  return crds::IfsModel({crds::Homeo::rotation(0.6180339887), crds::Homeo::sine(0.1)}, {0.5, 0.5});
}

crds::OccupationSpec occupation() {
  crds::OccupationSpec spec;
  spec.seed = 45;
  spec.realizations = 256;
  spec.burn_in = 500;
  spec.samples = 20;
  spec.bins = 64;
  return spec;
}

crds::PairSpec pairs() {
  return {2004, 256, 500, crds::CirclePoint(0.1), crds::CirclePoint(0.6)};
}

void BM_OccupationSerial(benchmark::State& state) {
  const auto sys = kn04();
  const auto spec = occupation();
  for (auto _ : state) benchmark::DoNotOptimize(crds::serial::occupation_counts(sys, spec));
}

void BM_OccupationOmp(benchmark::State& state) {
  const auto sys = kn04();
  const auto spec = occupation();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(crds::omp::occupation_counts(sys, spec, workers));
}

void BM_PairSerial(benchmark::State& state) {
  const auto sys = kn04();
  const auto spec = pairs();
  for (auto _ : state) benchmark::DoNotOptimize(crds::serial::pair_distances(sys, spec));
}

void BM_PairOmp(benchmark::State& state) {
  const auto sys = kn04();
  const auto spec = pairs();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(crds::omp::pair_distances(sys, spec, workers));
}

}  // namespace

BENCHMARK(BM_OccupationSerial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OccupationOmp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairSerial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairOmp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

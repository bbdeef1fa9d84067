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

#include "crds/presets.hpp"

namespace crds {

namespace {

const char* const kKn04 =
    "system = ifs\n"
    "generators = rotation(0.6180339887); sine(0.1)\n"
    "weights = 0.5, 0.5\n";

std::vector<Preset> build() {
  const std::string kn04 = kKn04;
  return {
      {"kn04-sync", "golden rotation plus sine(0.1): pair synchronisation after precondition checks",
       "name = kn04-sync\n" + kn04 +
           "estimator = sync\nseed = 2004\nrealizations = 500\nhorizon = 500\n"
           "require = no-deterministic-fixed-points, compressible, reverse-minimal, simple-generator\n"
           "x = 0.1\ny = 0.6\ntol = 1e-6\n"},
      {"rotations-nosync", "two irrational rotations: isometries never synchronise",
       "name = rotations-nosync\nsystem = ifs\n"
       "generators = rotation(0.6180339887); rotation(0.4142135624)\nweights = 0.5, 0.5\n"
       "estimator = sync\nseed = 7\nrealizations = 500\nhorizon = 500\nx = 0.1\ny = 0.6\ntol = 1e-6\n"},
      {"sde-sine1", "circle SDE with b = sin(2 pi x): synchronises",
       "name = sde-sine1\nsystem = sde\ndrift = sine:1\nsigma = 1\nh = 0.00390625\n"
       "estimator = sync\nseed = 11\nrealizations = 500\nhorizon = 50\nrequire = least-period-one\n"
       "x = 0.1\ny = 0.6\ntol = 1e-4\n"},
      {"sde-sine2-gap", "circle SDE with b = sin(4 pi x): a gap of 1/2 is preserved",
       "name = sde-sine2-gap\nsystem = sde\ndrift = sine:2\nsigma = 1\nh = 0.00390625\n"
       "estimator = sync\nseed = 13\nrealizations = 100\nhorizon = 50\nx = 0\ny = 0.5\ntol = 1e-4\n"},
      {"det-simple", "singleton sine(0.1): arcs around the repeller never contract",
       "name = det-simple\nsystem = ifs\ngenerators = sine(0.1)\nweights = 1\n"
       "estimator = local-stability\nseed = 1\nrealizations = 10\nhorizon = 500\n"
       "x = 0\nradii = 0.01, 0.05, 0.1\ntol = 1e-4\n"},
      {"invariant-arc", "generators mapping [0.25, 0.75] into itself: sync inside, then globally",
       "name = invariant-arc\nsystem = ifs\n"
       "generators = sine(0.1); pwl[(0.25,0.4),(0.75,0.7),(0.9,0.9)]\nweights = 0.5, 0.5\n"
       "estimator = arc-invariance\nseed = 16\nrealizations = 500\nhorizon = 500\n"
       "require = no-deterministic-fixed-points\n"
       "arc_u = 0.25:0.75\nu_x = 0.3\nu_y = 0.7\nx = 0.8\ny = 0.05\ntol = 1e-6\n"},
      {"crack-law", "law of the crack point over realizations",
       "name = crack-law\n" + kn04 +
           "estimator = crack-law\nseed = 45\nrealizations = 500\nhorizon = 2000\nbins = 64\n"
           "contract_tol = 1e-4\nequivariance_shift = 10\nequivariance_realizations = 50\n"},
      {"pair-estimate", "pullback attractor and crack-point repeller per realization",
       "name = pair-estimate\n" + kn04 +
           "estimator = pair\nseed = 510\nrealizations = 100\nhorizon = 2000\n"
           "depths = 250, 500, 1000, 2000\nanchor = 0.25\nanchor_alt = 0.75\ntol = 1e-8\n"},
      {"lemma34", "contraction probability of [0, 1/2] against 1 - rho(J)",
       "name = lemma34\n" + kn04 +
           "estimator = contraction-odds\nseed = 34\nrealizations = 2000\nhorizon = 500\n"
           "arc = 0:0.5\ntol = 1e-4\nburn_in = 500\nsamples = 20\nbins = 64\n"},
      {"birkhoff", "time averages from two starts against the stationary measure",
       "name = birkhoff\n" + kn04 +
           "estimator = birkhoff\nseed = 45\nrealizations = 200\nhorizon = 100000\n"
           "x1 = 0.1\nx2 = 0.7\narc = 0:0.25\nburn_in = 500\nsamples = 1000\nbins = 64\n"},
      {"spread-decay", "spread of a 1024-point cloud pushed forward by one realization",
       "name = spread-decay\n" + kn04 +
           "estimator = spread-decay\nseed = 512\nrealizations = 20\nhorizon = 500\ncloud = 1024\n"},
  };
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

ExperimentConfig preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return ExperimentConfig::parse(p.text);
  throw ConfigError(0, "preset", "unknown preset '" + name + "'");
}

}  // namespace crds

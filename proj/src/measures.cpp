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

#include <algorithm>
#include <array>
#include <cmath>

#include "crds/analysis.hpp"
#include "crds/kernels.hpp"
#include "crds/parallel.hpp"

namespace crds {

namespace {

constexpr std::uint64_t kContinuationStream = std::uint64_t{1} << 41;

OccupationSpec occupation(std::uint64_t seed, const OccupationParams& p, bool reverse) {
  return {seed, p.realizations, p.burn_in, p.samples, p.bins, reverse, p.start};
}

double image_mass(const EmpiricalMeasure& rho, const ArcImage& image) {
  return image.full() ? 1.0 : rho.mass(image.arc());
}

}  // namespace

EmpiricalMeasure stationary_measure(const System& system, std::uint64_t seed, const OccupationParams& params,
                                    int workers) {
  return EmpiricalMeasure::from_counts(omp::occupation_counts(system, occupation(seed, params, false), workers));
}

EmpiricalMeasure reverse_stationary_measure(const System& system, std::uint64_t seed, const OccupationParams& params,
                                            int workers) {
  if (!system.is_ifs()) throw Unsupported("reverse-stationary estimation needs inverse maps (IFS only)");
  return EmpiricalMeasure::from_counts(omp::occupation_counts(system, occupation(seed, params, true), workers));
}

MartingaleCheck martingale_check(const System& system, const EmpiricalMeasure& rho, const Arc& arc, std::int64_t s,
                                 std::int64_t t, std::size_t continuations, std::size_t prefixes, std::uint64_t seed,
                                 int workers) {
  const double l = arc.length();
  if (!(l > 0.0 && l < 1.0)) throw std::invalid_argument("martingale_check: arc length must lie in (0, 1)");
  if (s < 0 || t < 0 || continuations == 0) throw std::invalid_argument("martingale_check: bad step counts");
  std::vector<ArcImage> prefix_images(prefixes, ArcImage(arc));
  parallel_for(prefixes, workers, [&](std::size_t k) {
    prefix_images[k] = evolve_arcs(system, realization_key(seed, k), {arc.start, arc.end}, {{0, 1}}, s).front();
  });
  std::vector<double> later(prefixes * continuations);
  parallel_for(later.size(), workers, [&](std::size_t idx) {
    const ArcImage& start = prefix_images[idx / continuations];
    if (start.full()) {
      later[idx] = 1.0;
      return;
    }
    const NoiseKey key{seed, kContinuationStream + idx, 0};
    ArcImage image = evolve_arcs(system, key, {start.arc().start, start.arc().end}, {{0, 1}}, t).front();
    later[idx] = image_mass(rho, image);
  });

  MartingaleCheck out;
  out.s = s;
  out.t = t;
  out.continuations = continuations;
  out.bound = 3.0 / std::sqrt(static_cast<double>(continuations));
  for (std::size_t k = 0; k < prefixes; ++k) {
    const double h = image_mass(rho, prefix_images[k]);
    double diff = 0.0;
    for (std::size_t m = 0; m < continuations; ++m) diff += later[k * continuations + m] - h;
    diff /= static_cast<double>(continuations);
    out.h_s.push_back(h);
    out.mean_h_st.push_back(h + diff);
    out.deviation = std::max(out.deviation, std::abs(diff));
  }
  return out;
}

Json MartingaleCheck::to_json() const {
  return {{"s", s},           {"t", t},         {"continuations", continuations}, {"prefixes", h_s.size()},
          {"deviation", deviation}, {"clt_bound", bound}};
}

ContractionCheck contraction_check(const System& system, const EmpiricalMeasure& rho, const Arc& arc, std::size_t realizations,
                           std::int64_t horizon, double tol, std::uint64_t seed, int workers) {
  std::vector<double> lengths(realizations);
  parallel_for(realizations, workers, [&](std::size_t r) {
    lengths[r] = image_length(system, realization_key(seed, r), arc, horizon);
  });
  ContractionCheck out;
  out.realizations = realizations;
  out.horizon = horizon;
  std::size_t contracted = 0;
  std::size_t undecided = 0;
  for (double l : lengths) {
    if (l < tol) {
      ++contracted;
    } else if (l <= 1.0 - tol) {
      ++undecided;
    }
  }
  const double n = static_cast<double>(realizations);
  out.empirical = realizations ? static_cast<double>(contracted) / n : 0.0;
  out.undecided = realizations ? static_cast<double>(undecided) / n : 0.0;
  out.predicted = 1.0 - rho.mass(arc);
  out.complement_predicted = 1.0 - rho.mass(arc.complement());
  out.lengths = std::move(lengths);
  return out;
}

Json ContractionCheck::to_json() const {
  return {{"realizations", realizations},
          {"horizon", horizon},
          {"empirical", empirical},
          {"predicted", predicted},
          {"difference", std::abs(empirical - predicted)},
          {"complement_predicted", complement_predicted},
          {"prediction_sum", predicted + complement_predicted},
          {"undecided", undecided}};
}

SpreadDecay spread_decay(const System& system, std::uint64_t seed, std::size_t cloud, std::size_t realizations,
                         std::int64_t horizon, int workers) {
  if (cloud < 2) throw std::invalid_argument("spread_decay: cloud needs at least two points");
  SpreadDecay out;
  out.cloud = cloud;
  out.realizations = realizations;
  out.horizon = horizon;
  out.steps.push_back(0);
  for (std::int64_t k = 1; k < horizon; k *= 2) out.steps.push_back(k);
  if (horizon > 0) out.steps.push_back(horizon);
  out.steps.erase(std::unique(out.steps.begin(), out.steps.end()), out.steps.end());

  std::vector<std::vector<double>> spreads(realizations);
  parallel_for(realizations, workers, [&](std::size_t r) {
    std::vector<CirclePoint> points(cloud);
    for (std::size_t i = 0; i < cloud; ++i) points[i] = CirclePoint(static_cast<double>(i) / static_cast<double>(cloud));
    const NoiseKey key = realization_key(seed, r);
    std::int64_t at = 0;
    for (std::int64_t k : out.steps) {
      system.advance(key, at, k - at, points);
      at = k;
      spreads[r].push_back(spread(EmpiricalMeasure::from_samples(points)));
    }
  });
  std::vector<double> column(realizations);
  for (std::size_t i = 0; i < out.steps.size(); ++i) {
    for (std::size_t r = 0; r < realizations; ++r) column[r] = spreads[r][i];
    out.median.push_back(median(column));
  }
  for (const auto& s : spreads) out.final_spreads.push_back(s.back());
  return out;
}

Json SpreadDecay::to_json() const {
  return {{"cloud", cloud},
          {"realizations", realizations},
          {"horizon", horizon},
          {"final_median_spread", median.empty() ? 0.0 : median.back()},
          {"final_max_spread", final_spreads.empty() ? 0.0
                                                     : *std::max_element(final_spreads.begin(), final_spreads.end())}};
}

}  // namespace crds

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
#include "crds/parallel.hpp"

namespace crds {

namespace {

constexpr std::size_t kGrid = 64;
constexpr double kBracket = 1e-13;

}  // namespace

CrackEstimate crack_point(const System& system, const NoiseKey& key, CirclePoint base, std::int64_t horizon,
                          double contract_tol) {
  CrackEstimate est;
  est.horizon = horizon;

  std::vector<CirclePoint> grid;
  std::vector<ArcIndex> arcs;
  for (std::size_t j = 0; j < kGrid; ++j) {
    grid.push_back(base.rotated(static_cast<double>(j) / kGrid));
    arcs.emplace_back(j, (j + 1) % kGrid);
  }
  const auto images = evolve_arcs(system, key, grid, arcs, horizon);
  std::vector<std::size_t> wide;
  for (std::size_t j = 0; j < kGrid; ++j)
    if (!(images[j].length() < contract_tol)) wide.push_back(j);
  if (wide.size() == kGrid) {
    est.note = "no grid arc contracted";
    return est;
  }
  est.present = true;
  const bool adjacent = wide.size() == 2 && ((wide[0] + 1) % kGrid == wide[1] || (wide[1] + 1) % kGrid == wide[0]);
  if (wide.size() > 2 || (wide.size() == 2 && !adjacent)) {
    est.inconclusive = true;
    est.note = "mass spread over non-adjacent grid arcs";
    return est;
  }
  std::size_t j = wide.front();
  for (std::size_t w : wide)
    if (images[w].length() > images[j].length()) j = w;

  // Re-base half a turn away so the crack sits inside [31/64, 34/64] of the new base.
  const CirclePoint b = base.rotated((static_cast<double>(j) - 32.0) / kGrid);
  auto length_of = [&](double v) { return image_length(system, key, Arc{b, b.rotated(v)}, horizon); };
  double lo = 31.0 / kGrid;
  double hi = 34.0 / kGrid;
  if (!(length_of(lo) < contract_tol) || !(length_of(hi) > 1.0 - contract_tol)) {
    est.inconclusive = true;
    est.note = "initial bracket does not straddle the crack";
    est.location = b.rotated(0.5 * (lo + hi));
    est.bracket_width = hi - lo;
    return est;
  }
  while (hi - lo > kBracket) {
    const double mid = 0.5 * (lo + hi);
    (length_of(mid) < contract_tol ? lo : hi) = mid;
  }
  est.location = b.rotated(0.5 * (lo + hi));
  est.bracket_width = hi - lo;
  if (!(length_of(hi) > 1.0 - contract_tol)) {
    est.inconclusive = true;
    est.note = "transition band wider than the bracket; increase the horizon";
  }
  return est;
}

CrackLaw crack_law(const System& system, std::uint64_t seed, std::size_t realizations, std::int64_t horizon,
                   std::size_t bins, double contract_tol, int workers) {
  CrackLaw law;
  law.realizations = realizations;
  law.horizon = horizon;
  law.bins = bins;
  law.estimates.resize(realizations);
  law.base_residuals.assign(realizations, 0.0);
  parallel_for(realizations, workers, [&](std::size_t r) {
    const NoiseKey key = realization_key(seed, r);
    CrackEstimate e = crack_point(system, key, CirclePoint(0.0), horizon, contract_tol);
    if (e.present && !e.inconclusive) {
      const CrackEstimate alt = crack_point(system, key, CirclePoint(0.5), horizon, contract_tol);
      law.base_residuals[r] = distance(e.location, alt.location);
      if (!alt.present || alt.inconclusive || law.base_residuals[r] > e.bracket_width + alt.bracket_width + 1e-12) {
        e.inconclusive = true;
        e.note = "estimates from bases 0 and 1/2 disagree";
      }
    }
    law.estimates[r] = e;
  });
  std::vector<CirclePoint> located;
  for (const auto& e : law.estimates) {
    if (e.present) ++law.present;
    if (e.inconclusive) ++law.inconclusive;
    if (e.present && !e.inconclusive) located.push_back(e.location);
  }
  law.null_bound = 3.0 / static_cast<double>(bins);
  if (!located.empty()) {
    law.law = EmpiricalMeasure::from_samples(std::move(located));
    law.max_bin_mass = law.law->max_bin_mass(bins);
    law.atomless = law.max_bin_mass <= law.null_bound;
  }
  return law;
}

Json CrackLaw::to_json() const {
  double widest = 0.0;
  for (const auto& e : estimates)
    if (e.present && !e.inconclusive) widest = std::max(widest, e.bracket_width);
  return {{"realizations", realizations},
          {"horizon", horizon},
          {"bins", bins},
          {"present", present},
          {"present_fraction", realizations ? static_cast<double>(present) / static_cast<double>(realizations) : 0.0},
          {"inconclusive", inconclusive},
          {"max_bin_mass", max_bin_mass},
          {"null_bound", null_bound},
          {"atomless", atomless},
          {"max_bracket_width", widest},
          {"max_base_residual", base_residuals.empty() ? 0.0
                                                       : *std::max_element(base_residuals.begin(), base_residuals.end())}};
}

CrackEquivariance crack_equivariance(const System& system, std::uint64_t seed, std::size_t realizations,
                                     std::int64_t shift, std::int64_t horizon, double contract_tol, int workers) {
  CrackEquivariance out;
  out.shift = shift;
  out.residuals.assign(realizations, -1.0);
  out.widths.assign(realizations, 0.0);
  parallel_for(realizations, workers, [&](std::size_t r) {
    const NoiseKey key = realization_key(seed, r);
    const CrackEstimate now = crack_point(system, key, CirclePoint(0.0), horizon, contract_tol);
    const CrackEstimate later = crack_point(system, key.shifted(shift), CirclePoint(0.0), horizon, contract_tol);
    if (!now.present || now.inconclusive || !later.present || later.inconclusive) return;
    std::array<CirclePoint, 1> p{now.location};
    system.advance(key, 0, shift, p);
    out.residuals[r] = distance(later.location, p[0]);
    out.widths[r] = std::max(now.bracket_width, later.bracket_width);
  });
  for (std::size_t r = 0; r < realizations; ++r) {
    if (out.residuals[r] < 0.0) continue;
    ++out.checked;
    if (out.residuals[r] < out.widths[r] + 1e-6) ++out.within;
  }
  return out;
}

Json CrackEquivariance::to_json() const {
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  return {{"shift", shift}, {"checked", checked}, {"within", within}, {"max_residual", worst}};
}

}  // namespace crds

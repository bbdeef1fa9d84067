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
#include <stdexcept>

#include "crds/analysis.hpp"
#include "crds/parallel.hpp"

namespace crds {

namespace {

// phi(m, theta^{-m} omega) y, where omega is given by key.
CirclePoint pulled_back(const System& system, const NoiseKey& key, CirclePoint y, std::int64_t depth) {
  std::array<CirclePoint, 1> p{y};
  system.advance(key.shifted(-depth), 0, depth, p);
  return p[0];
}

}  // namespace

PairEstimate attractor_repeller(const System& system, std::uint64_t seed, std::size_t realizations,
                                std::vector<std::int64_t> depths, CirclePoint anchor, CirclePoint anchor_alt,
                                std::int64_t crack_horizon, double tol, int workers) {
  if (depths.empty() || !std::is_sorted(depths.begin(), depths.end()) || depths.front() < 0)
    throw std::invalid_argument("attractor_repeller: depths must be non-negative and increasing");
  if (anchor == anchor_alt) throw std::invalid_argument("attractor_repeller: anchors must differ");
  PairEstimate out;
  out.depths = depths;
  out.anchor = anchor;
  out.anchor_alt = anchor_alt;
  out.tol = tol;
  out.rows.resize(realizations);
  parallel_for(realizations, workers, [&](std::size_t r) {
    const NoiseKey key = realization_key(seed, r);
    PairRow& row = out.rows[r];
    for (std::int64_t m : depths) {
      row.attractor = pulled_back(system, key, anchor, m);
      row.attractor_alt = pulled_back(system, key, anchor_alt, m);
      row.depth_residuals.push_back(distance(row.attractor, row.attractor_alt));
    }
    row.residual = row.depth_residuals.back();
    row.converged = row.residual < tol;
    row.repeller = crack_point(system, key, CirclePoint(0.0), crack_horizon);
    if (row.repeller.present && !row.repeller.inconclusive) row.separation = distance(row.attractor, row.repeller.location);
    std::array<CirclePoint, 1> next{row.attractor};
    system.advance(key, 0, 1, next);
    row.equivariance = distance(pulled_back(system, key.shifted(1), anchor, depths.back()), next[0]);
  });
  for (const auto& row : out.rows) {
    if (!row.converged) continue;
    ++out.converged;
    out.max_equivariance = std::max(out.max_equivariance, row.equivariance);
    if (row.repeller.present && !row.repeller.inconclusive) out.min_separation = std::min(out.min_separation, row.separation);
  }
  return out;
}

Json PairEstimate::to_json() const {
  std::size_t repellers = 0;
  for (const auto& row : rows)
    if (row.converged && row.repeller.present && !row.repeller.inconclusive) ++repellers;
  return {{"realizations", rows.size()},
          {"depths", depths},
          {"anchors", {anchor.value(), anchor_alt.value()}},
          {"tol", tol},
          {"converged", converged},
          {"converged_fraction", rows.empty() ? 0.0 : static_cast<double>(converged) / static_cast<double>(rows.size())},
          {"repellers_located", repellers},
          {"min_separation", min_separation},
          {"max_equivariance", max_equivariance}};
}

}  // namespace crds

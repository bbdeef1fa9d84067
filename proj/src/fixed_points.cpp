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

#include <stdexcept>

#include "crds/analysis.hpp"

namespace crds {

FixedPointSet deterministic_fixed_points(const IfsModel& model) {
  constexpr double kTol = 1e-9;
  FixedPointSet out;
  out.all_points = true;
  const Homeo* first = nullptr;
  for (const auto& g : model.generators()) {
    auto fixed = g.fixed_points();
    if (fixed.all_points) continue;
    out.all_points = false;
    first = &g;
    out.points = std::move(fixed.points);
    break;
  }
  if (!first) return out;
  std::erase_if(out.points, [&](const FixedPoint& p) {
    for (const auto& g : model.generators())
      if (distance(g.apply(p.point), p.point) > kTol) return true;
    return false;
  });
  return out;
}

}  // namespace crds

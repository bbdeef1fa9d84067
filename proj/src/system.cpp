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

#include "crds/system.hpp"

#include <cmath>
#include <cstdio>

namespace crds {

System::System(SdeModel model) : model_(std::move(model)) {
  if (sde().steps_per_unit() == 0) throw StepAlignmentError("sde system: 1/h must be an integer");
}

void System::advance(const NoiseKey& key, std::int64_t first_step, std::int64_t count,
                     std::span<CirclePoint> points) const {
  if (is_ifs()) {
    crds::advance(ifs(), NoiseRealization(key), first_step, count, points);
    return;
  }
  const SdeModel& m = sde();
  const std::int64_t n = m.steps_per_unit();
  const BrownianPath path = BrownianPath(key.seed, key.stream, m.h()).shift(key.offset * n);
  const double h = m.h();
  const double sigma = m.sigma();
  for (std::int64_t j = first_step * n + 1; j <= (first_step + count) * n; ++j) {
    const double noise = sigma * path.increment(j);
    for (auto& p : points) p = Lift(0, p).advanced(h * m.drift()(p) + noise).base();
  }
}

void System::advance_inverse(const NoiseKey& key, std::int64_t first_step, std::int64_t count,
                             std::span<CirclePoint> points) const {
  if (!is_ifs()) throw Unsupported("inverse evolution is not available for the SDE system");
  crds::advance_inverse(ifs(), NoiseRealization(key), first_step, count, points);
}

double System::log_derivative(const NoiseKey& key, std::int64_t step, CirclePoint x) const {
  if (!is_ifs()) throw Unsupported("Lyapunov exponents are not available for the SDE system");
  return std::log(ifs().generator(map_at(key, step)).derivative(x.value()));
}

std::size_t System::map_at(const NoiseKey& key, std::int64_t step) const {
  if (!is_ifs()) throw Unsupported("the SDE system has no map sequence");
  return map_index(ifs(), NoiseRealization(key), step);
}

std::string System::describe() const {
  if (is_ifs()) {
    std::string s = "ifs{";
    for (std::size_t i = 0; i < ifs().size(); ++i) {
      if (i) s += "; ";
      s += ifs().generator(i).to_string();
    }
    return s + "}";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, " sigma=%.17g h=%.17g}", sde().sigma(), sde().h());
  return "sde{" + sde().drift().to_string() + buf;
}

}  // namespace crds

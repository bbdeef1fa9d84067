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

#include "crds/circle.hpp"

#include <cstdio>

namespace crds {

namespace {

constexpr std::int64_t kUnitsSigned = static_cast<std::int64_t>(CirclePoint::kUnits);

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

CirclePoint::CirclePoint(double x) {
  double frac = x - std::floor(x);
  double scaled = std::nearbyint(frac * kScale);
  if (scaled >= kScale) scaled = 0.0;
  value_ = scaled * kResolution;
}

std::uint64_t lattice_units(double delta) {
  if (std::abs(delta) >= 1024.0) delta -= std::floor(delta);
  const auto units = static_cast<std::int64_t>(std::llround(delta * CirclePoint::kScale));
  return static_cast<std::uint64_t>(units) & CirclePoint::kMask;
}

CirclePoint CirclePoint::rotated(double delta) const {
  return from_units(units() + lattice_units(delta));
}

double d_plus(CirclePoint x, CirclePoint y) {
  return static_cast<double>((y.units() - x.units()) & CirclePoint::kMask) * CirclePoint::kResolution;
}

double distance(CirclePoint x, CirclePoint y) {
  const double forward = d_plus(x, y);
  return forward <= 0.5 ? forward : 1.0 - forward;
}

double arc_diameter(const Arc& arc) { return std::min(arc.length(), 0.5); }

Orientation cyclic_order(CirclePoint x, CirclePoint y, CirclePoint z) {
  if (x == y || y == z || x == z) return Orientation::degenerate;
  return d_plus(x, y) < d_plus(x, z) ? Orientation::positive : Orientation::negative;
}

Lift::Lift(double value) {
  const double whole = std::floor(value);
  double scaled = std::nearbyint((value - whole) * CirclePoint::kScale);
  winding_ = static_cast<std::int64_t>(whole);
  if (scaled >= CirclePoint::kScale) {
    scaled = 0.0;
    ++winding_;
  }
  base_ = CirclePoint::from_units(static_cast<std::uint64_t>(scaled));
}

Lift Lift::advanced(double delta) const {
  const double whole = std::floor(delta);
  const auto units = static_cast<std::int64_t>(std::llround((delta - whole) * CirclePoint::kScale));
  const std::int64_t total = static_cast<std::int64_t>(base_.units()) + units;
  const std::int64_t carry = floor_div(total, kUnitsSigned);
  return Lift(winding_ + static_cast<std::int64_t>(whole) + carry,
              CirclePoint::from_units(static_cast<std::uint64_t>(total - carry * kUnitsSigned)));
}

double lift_gap(const Lift& from, const Lift& to) {
  const std::int64_t units = (to.winding() - from.winding()) * kUnitsSigned +
                             static_cast<std::int64_t>(to.base().units()) -
                             static_cast<std::int64_t>(from.base().units());
  return static_cast<double>(units) * CirclePoint::kResolution;
}

void ArcImage::update(CirclePoint start, CirclePoint end) {
  if (!full_ && start == end && arc_.length() > 0.5) full_ = true;
  arc_ = {start, end};
}

std::string to_string(CirclePoint p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p.value());
  return buf;
}

}  // namespace crds

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

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace crds {

/// A point of the circle R/Z.
///
/// The stored representative lies in [0,1) on the lattice 2^-53 Z. Every
/// translation goes through exact integer arithmetic on that lattice, so
/// rotations are exact isometries and d_plus(x,y) + d_plus(y,x) == 1 holds
/// bit-exactly for distinct points.
class CirclePoint {
public:
  static constexpr int kBits = 53;
  static constexpr std::uint64_t kUnits = std::uint64_t{1} << kBits;
  static constexpr std::uint64_t kMask = kUnits - 1;
  static constexpr double kScale = 9007199254740992.0;  // 2^53
  static constexpr double kResolution = 1.0 / kScale;

  constexpr CirclePoint() = default;

  /// Projects x + Z onto its canonical representative.
  explicit CirclePoint(double x);

  static constexpr CirclePoint from_units(std::uint64_t units) {
    CirclePoint p;
    p.value_ = static_cast<double>(units & kMask) * kResolution;
    return p;
  }

  constexpr double value() const { return value_; }
  std::uint64_t units() const { return static_cast<std::uint64_t>(value_ * kScale); }

  /// project(value + delta), computed exactly on the lattice.
  CirclePoint rotated(double delta) const;

  friend constexpr bool operator==(CirclePoint, CirclePoint) = default;
  friend constexpr std::strong_ordering operator<=>(CirclePoint a, CirclePoint b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    return a.value_ > b.value_ ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

private:
  double value_ = 0.0;
};

/// Signed lattice displacement of delta, i.e. round(delta * 2^53) reduced mod 2^53.
std::uint64_t lattice_units(double delta);

inline CirclePoint project(double x) { return CirclePoint(x); }

/// Anticlockwise distance: min{r >= 0 : project(x + r) = y}.
double d_plus(CirclePoint x, CirclePoint y);

/// The quotient metric min(d_plus(x,y), d_plus(y,x)).
double distance(CirclePoint x, CirclePoint y);

/// An oriented arc, traversed anticlockwise from start to end. An arc with
/// start == end is degenerate (length 0); the whole circle is not an Arc.
struct Arc {
  CirclePoint start;
  CirclePoint end;

  static Arc from_length(CirclePoint start, double length) { return {start, start.rotated(length)}; }

  double length() const { return d_plus(start, end); }
  bool contains(CirclePoint x) const { return d_plus(start, x) <= d_plus(start, end); }
  Arc complement() const { return {end, start}; }

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Stands for the whole circle wherever an arc image may have wrapped all the way round.
struct FullCircle {
  static constexpr double length() { return 1.0; }
};
inline constexpr FullCircle full_circle{};

/// diam J = min(l(J), 1/2).
double arc_diameter(const Arc& arc);

enum class Orientation { positive, degenerate, negative };

/// Positive iff, going anticlockwise from x, y is met strictly before z.
Orientation cyclic_order(CirclePoint x, CirclePoint y, CirclePoint z);

/// A point of R: an integer winding plus its base point on the circle.
/// value() == winding + base.value(); translations are exact on the lattice.
class Lift {
public:
  constexpr Lift() = default;
  constexpr Lift(std::int64_t winding, CirclePoint base) : winding_(winding), base_(base) {}
  explicit Lift(double value);

  std::int64_t winding() const { return winding_; }
  CirclePoint base() const { return base_; }
  double value() const { return static_cast<double>(winding_) + base_.value(); }

  Lift advanced(double delta) const;

  friend bool operator==(const Lift&, const Lift&) = default;
  friend std::strong_ordering operator<=>(const Lift& a, const Lift& b) {
    if (auto c = a.winding_ <=> b.winding_; c != 0) return c;
    return a.base_ <=> b.base_;
  }

private:
  std::int64_t winding_ = 0;
  CirclePoint base_{};
};

/// to - from, exact when the two lifts are less than 2^10 apart.
double lift_gap(const Lift& from, const Lift& to);

/// The image of an arc under a sequence of homeomorphisms, tracked through
/// its endpoints. If the endpoints ever coincide while the previous length
/// exceeded 1/2, the image is taken to have become the full circle (length 1)
/// rather than the degenerate arc.
class ArcImage {
public:
  explicit ArcImage(const Arc& arc) : arc_(arc) {}

  const Arc& arc() const { return arc_; }
  bool full() const { return full_; }
  double length() const { return full_ ? FullCircle::length() : arc_.length(); }

  void update(CirclePoint start, CirclePoint end);

private:
  Arc arc_;
  bool full_ = false;
};

std::string to_string(CirclePoint p);

}  // namespace crds

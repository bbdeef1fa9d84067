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

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "crds/circle.hpp"

namespace crds {

/// Thrown when a homeomorphism is built from parameters that do not define one.
class InvalidHomeo : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by the textual parser; carries the byte offset of the failure.
class HomeoParseError : public std::runtime_error {
public:
  HomeoParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// x -> x + alpha.
struct Rotation {
  double alpha;
};

/// Lift x -> x + epsilon sin(2 pi x), |epsilon| < 1/(2 pi).
struct SinePerturbation {
  double epsilon;
};

/// Boundary action of z -> e^{2 pi i alpha} (z + a) / (1 + conj(a) z), |a| < 1.
struct Mobius {
  double alpha;
  std::complex<double> a;
};

/// Circle map through (input, output) breakpoints with linear interpolation.
/// Inputs strictly increasing in [0,1); outputs in the same cyclic order.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> breakpoints;
  // Lift tables: inputs[0..k] with inputs[k] = inputs[0] + 1, likewise outputs.
  std::vector<double> inputs;
  std::vector<double> outputs;
};

class Homeo;

/// Applied left to right: compose[f, g](x) = g(f(x)).
struct Composition {
  std::vector<Homeo> parts;
};

enum class Stability { attracting, repelling, neutral };

struct FixedPoint {
  CirclePoint point;
  Stability stability;
  double derivative;  // lift derivative at the point (right derivative for PiecewiseLinear)
};

struct FixedPointSet {
  bool all_points = false;  // the map is the identity
  std::vector<FixedPoint> points;

  bool empty() const { return !all_points && points.empty(); }
};

enum class SimpleVerdict { simple, not_simple, inconclusive };

struct SimpleClassification {
  SimpleVerdict verdict = SimpleVerdict::not_simple;
  std::optional<CirclePoint> repeller;
  std::optional<CirclePoint> attractor;
  std::string reason;

  bool is_simple() const { return verdict == SimpleVerdict::simple; }
};

/// An orientation-preserving circle homeomorphism from one of the parametric
/// families. Immutable after construction; parameters are validated there.
class Homeo {
public:
  using Family = std::variant<Rotation, SinePerturbation, Mobius, PiecewiseLinear, Composition>;

  static Homeo rotation(double alpha);
  static Homeo sine(double epsilon);
  static Homeo mobius(double alpha, std::complex<double> a);
  static Homeo piecewise_linear(std::vector<std::pair<double, double>> breakpoints);
  static Homeo compose(std::vector<Homeo> parts);

  /// Canonical text, e.g. "rotation(0.25)", "pwl[(0,0.1),(0.5,0.7)]".
  static Homeo parse(std::string_view text);
  std::string to_string() const;

  const Family& family() const { return family_; }

  CirclePoint apply(CirclePoint x) const;
  CirclePoint apply_inverse(CirclePoint y) const;

  /// F(x) - x for the lift F with F(0) in [0,1); 1-periodic.
  double displacement(double x) const;
  double lift(double x) const { return x + displacement(x); }

  /// Lift derivative; right derivative for PiecewiseLinear.
  double derivative(double x) const;
  /// True when every constituent map is smooth (no PiecewiseLinear).
  bool differentiable() const;

  FixedPointSet fixed_points() const;

  friend bool operator==(const Homeo& a, const Homeo& b) { return a.to_string() == b.to_string(); }

private:
  explicit Homeo(Family family) : family_(std::move(family)) {}
  Family family_;
};

/// Three-valued: a finite grid of test points and a finite horizon can only
/// give evidence of simplicity, never a proof.
SimpleClassification classify_simple(const Homeo& f, int horizon = 1000, double tol = 1e-9);

}  // namespace crds

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

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crds/circle.hpp"

namespace crds {

class StepAlignmentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Adjacent tracked lifts stopped being strictly increasing; the step size
/// guard was violated.
class OrderViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NoContraction : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A 1-periodic Lipschitz drift: sin(2 pi k x) or a periodic linear
/// interpolation of samples on a uniform grid.
class DriftSpec {
public:
  static DriftSpec sine(int harmonic);
  static DriftSpec tabulated(std::vector<double> samples);
  /// "sine:k", "table:[v0,v1,...]" or "table:path.csv" (one value per line).
  static DriftSpec parse(std::string_view spec);

  double operator()(CirclePoint x) const;
  double operator()(double x) const { return (*this)(project(x)); }

  double lipschitz() const { return lipschitz_; }
  int harmonic() const { return harmonic_; }
  const std::vector<double>& samples() const { return samples_; }
  std::string to_string() const;

private:
  DriftSpec() = default;
  int harmonic_ = 0;  // 0 for tabulated
  std::vector<double> samples_;
  double lipschitz_ = 0.0;
  std::string source_;
};

/// Largest n <= 64 such that b is 1/n-periodic on a 2^12 grid to within tol; 1 if none.
int least_period_divisor(const DriftSpec& drift, double tol = 1e-9);

/// dX = b(X) dt + sigma dW on lifts, discretised with step h.
class SdeModel {
public:
  SdeModel(DriftSpec drift, double sigma, double h);

  const DriftSpec& drift() const { return drift_; }
  double sigma() const { return sigma_; }
  double h() const { return h_; }
  /// Number of steps in unit time; 0 if 1/h is not an integer.
  std::int64_t steps_per_unit() const;

private:
  DriftSpec drift_;
  double sigma_;
  double h_;
};

/// Two-sided Brownian increments, a pure function of (seed, stream, index).
/// Forward step j >= 1 covers [(j-1) h, j h]; steps j <= 0 are the past.
/// A path coarsened by m sums m consecutive base increments, so paths at
/// step h and m h are the same Brownian motion sampled on nested grids.
class BrownianPath {
public:
  BrownianPath(std::uint64_t seed, std::uint64_t stream, double base_step)
      : seed_(seed), stream_(stream), base_step_(base_step) {}

  double step() const { return base_step_ * static_cast<double>(stride_); }
  double increment(std::int64_t j) const;
  BrownianPath shift(std::int64_t steps) const;
  BrownianPath coarsened(std::int64_t factor) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  double base_step_;
  std::int64_t stride_ = 1;
  std::int64_t offset_ = 0;  // in base steps
};

/// Row k holds the tracked lifts after k steps.
class LiftTrajectory {
public:
  LiftTrajectory(std::size_t steps, std::size_t points) : points_(points), data_((steps + 1) * points) {}

  std::size_t steps() const { return data_.size() / points_ - 1; }
  std::size_t points() const { return points_; }
  std::span<Lift> row(std::size_t k) { return {data_.data() + k * points_, points_}; }
  std::span<const Lift> row(std::size_t k) const { return {data_.data() + k * points_, points_}; }
  const Lift& at(std::size_t k, std::size_t i) const { return data_[k * points_ + i]; }

private:
  std::size_t points_;
  std::vector<Lift> data_;
};

/// One Euler-Maruyama step X + h b(X) + sigma dW for every lift, same dW for all.
void euler_step(const SdeModel& model, double dw, std::span<Lift> lifts);

/// Applies steps first_step + 1 .. first_step + count in place, no order checks.
void advance_lifts(const SdeModel& model, const BrownianPath& path, std::int64_t first_step, std::int64_t count,
                   std::span<Lift> lifts);

/// Integrates the tracked lifts to time T on one shared path. Lifts must be
/// strictly increasing with span < 1; T must be a multiple of h. Throws
/// OrderViolation if any step breaks the strict cyclic order.
LiftTrajectory integrate_flow(const SdeModel& model, const BrownianPath& path, std::span<const Lift> lifts,
                              double horizon);

/// The deterministic driving path: slope eta up to ramp_end, flat afterwards.
struct WitnessPath {
  double eta;
  double ramp_end;
  double value(double t) const { return eta * std::min(std::max(t, 0.0), ramp_end); }
};

struct WitnessResult {
  WitnessPath path;
  double anchor;            // lift a with b(a + l) < b(a)
  double drift_gap;         // b(a) - b(a + l) > 0
  double contraction_time;  // first t with arc length below l(J)
  double achieved_length;
  double initial_rate;      // -(d/dt) length at the end of the ramp
  double substep;
};

/// Builds the ramp-then-flat path that carries J next to a point where the
/// drift pulls its endpoints together, and integrates both endpoints until the
/// arc is shorter than it started. Throws PreconditionError if b has a least
/// period below 1, NoContraction if eta is too small.
WitnessResult witness_path(const SdeModel& model, const Arc& arc, double eta);

}  // namespace crds

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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "crds/circle.hpp"

namespace crds {

/// A probability measure on the circle: weighted samples, or a histogram of
/// B equal bins over [0,1). Masses are normalised to total 1.
class EmpiricalMeasure {
public:
  EmpiricalMeasure() = default;

  /// Equal weights when weights is empty.
  static EmpiricalMeasure from_samples(std::vector<CirclePoint> samples, std::vector<double> weights = {});
  static EmpiricalMeasure from_histogram(std::vector<double> masses);
  static EmpiricalMeasure from_counts(const std::vector<std::uint64_t>& counts);
  static EmpiricalMeasure uniform(std::size_t bins) { return from_histogram(std::vector<double>(bins, 1.0)); }

  bool is_histogram() const { return histogram_; }
  std::size_t size() const { return histogram_ ? masses_.size() : points_.size(); }

  /// Mass of a closed arc. Histogram bins partly covered count in proportion to the overlap.
  double mass(const Arc& arc) const;
  double total() const;

  /// Masses of B equal bins; sample i goes to bin floor(x_i B).
  std::vector<double> bin_masses(std::size_t bins) const;
  double max_bin_mass(std::size_t bins) const;

  /// Support points with their masses, bins represented by their centres, sorted by position.
  std::vector<std::pair<CirclePoint, double>> atoms() const;

  const std::vector<double>& masses() const { return masses_; }

private:
  bool histogram_ = false;
  std::vector<CirclePoint> points_;  // sorted, samples only
  std::vector<double> masses_;
};

/// Half the L1 distance between the B-bin coarsenings of a and b.
double total_variation(const EmpiricalMeasure& a, const EmpiricalMeasure& b, std::size_t bins);

/// Kolmogorov-Smirnov distance to Lebesgue measure, CDF taken from 0.
double ks_to_uniform(const EmpiricalMeasure& m);

/// Spread D: the infimum of v > 0 such that a closed arc shorter than v has
/// mass above 1 - v. Bisection on v to tolerance tol with a sliding-window
/// feasibility check over the sorted atoms.
double spread(const EmpiricalMeasure& m, double tol = 1e-13);

}  // namespace crds

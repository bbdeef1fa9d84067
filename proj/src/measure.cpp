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

#include "crds/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace crds {

namespace {

std::vector<double> normalised(std::vector<double> masses) {
  double total = 0.0;
  for (double m : masses) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("measure: masses must be finite and >= 0");
    total += m;
  }
  if (!(total > 0.0)) throw std::invalid_argument("measure: total mass must be positive");
  for (double& m : masses) m /= total;
  return masses;
}

// Histogram CDF on [0,1], linear inside bins.
double histogram_cdf(const std::vector<double>& masses, double x) {
  const double b = static_cast<double>(masses.size());
  const double t = std::clamp(x, 0.0, 1.0) * b;
  const auto whole = std::min(static_cast<std::size_t>(t), masses.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < whole; ++i) acc += masses[i];
  if (whole < masses.size()) acc += masses[whole] * (t - static_cast<double>(whole));
  return acc;
}

}  // namespace

EmpiricalMeasure EmpiricalMeasure::from_samples(std::vector<CirclePoint> samples, std::vector<double> weights) {
  if (samples.empty()) throw std::invalid_argument("measure: no samples");
  if (weights.empty()) weights.assign(samples.size(), 1.0);
  if (weights.size() != samples.size()) throw std::invalid_argument("measure: one weight per sample required");
  weights = normalised(std::move(weights));
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return samples[a] < samples[b]; });
  EmpiricalMeasure m;
  m.points_.reserve(samples.size());
  m.masses_.reserve(samples.size());
  for (std::size_t i : order) {
    m.points_.push_back(samples[i]);
    m.masses_.push_back(weights[i]);
  }
  return m;
}

EmpiricalMeasure EmpiricalMeasure::from_histogram(std::vector<double> masses) {
  if (masses.empty()) throw std::invalid_argument("measure: histogram needs at least one bin");
  EmpiricalMeasure m;
  m.histogram_ = true;
  m.masses_ = normalised(std::move(masses));
  return m;
}

EmpiricalMeasure EmpiricalMeasure::from_counts(const std::vector<std::uint64_t>& counts) {
  return from_histogram(std::vector<double>(counts.begin(), counts.end()));
}

double EmpiricalMeasure::total() const { return std::accumulate(masses_.begin(), masses_.end(), 0.0); }

double EmpiricalMeasure::mass(const Arc& arc) const {
  const double s = arc.start.value();
  const double len = arc.length();
  if (histogram_) {
    if (len == 0.0) return 0.0;
    const double e = s + len;
    if (e <= 1.0) return histogram_cdf(masses_, e) - histogram_cdf(masses_, s);
    return 1.0 - histogram_cdf(masses_, s) + histogram_cdf(masses_, e - 1.0);
  }
  double acc = 0.0;
  auto sum_range = [&](CirclePoint lo, CirclePoint hi) {
    const auto first = std::lower_bound(points_.begin(), points_.end(), lo);
    const auto last = std::upper_bound(points_.begin(), points_.end(), hi);
    for (auto it = first; it < last; ++it) acc += masses_[static_cast<std::size_t>(it - points_.begin())];
  };
  if (arc.start <= arc.end) {
    sum_range(arc.start, arc.end);
  } else {
    sum_range(arc.start, CirclePoint::from_units(CirclePoint::kMask));
    sum_range(CirclePoint(0.0), arc.end);
  }
  return acc;
}

std::vector<double> EmpiricalMeasure::bin_masses(std::size_t bins) const {
  if (bins == 0) throw std::invalid_argument("measure: bin count must be positive");
  std::vector<double> out(bins, 0.0);
  if (histogram_) {
    if (bins == masses_.size()) return masses_;
    double prev = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
      const double next = histogram_cdf(masses_, static_cast<double>(i + 1) / static_cast<double>(bins));
      out[i] = next - prev;
      prev = next;
    }
    return out;
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto b = std::min(static_cast<std::size_t>(points_[i].value() * static_cast<double>(bins)), bins - 1);
    out[b] += masses_[i];
  }
  return out;
}

double EmpiricalMeasure::max_bin_mass(std::size_t bins) const {
  const auto masses = bin_masses(bins);
  return *std::max_element(masses.begin(), masses.end());
}

std::vector<std::pair<CirclePoint, double>> EmpiricalMeasure::atoms() const {
  std::vector<std::pair<CirclePoint, double>> out;
  if (histogram_) {
    const double b = static_cast<double>(masses_.size());
    for (std::size_t i = 0; i < masses_.size(); ++i)
      if (masses_[i] > 0.0) out.emplace_back(CirclePoint((static_cast<double>(i) + 0.5) / b), masses_[i]);
    return out;
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!out.empty() && out.back().first == points_[i]) {
      out.back().second += masses_[i];
    } else {
      out.emplace_back(points_[i], masses_[i]);
    }
  }
  return out;
}

double total_variation(const EmpiricalMeasure& a, const EmpiricalMeasure& b, std::size_t bins) {
  const auto pa = a.bin_masses(bins);
  const auto pb = b.bin_masses(bins);
  double acc = 0.0;
  for (std::size_t i = 0; i < bins; ++i) acc += std::abs(pa[i] - pb[i]);
  return 0.5 * acc;
}

double ks_to_uniform(const EmpiricalMeasure& m) {
  double worst = 0.0;
  double cdf = 0.0;
  if (m.is_histogram()) {
    const double b = static_cast<double>(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      cdf += m.masses()[i];
      worst = std::max(worst, std::abs(cdf - static_cast<double>(i + 1) / b));
    }
    return worst;
  }
  for (const auto& [p, w] : m.atoms()) {
    worst = std::max(worst, std::abs(cdf - p.value()));
    cdf += w;
    worst = std::max(worst, std::abs(cdf - p.value()));
  }
  return worst;
}

double spread(const EmpiricalMeasure& m, double tol) {
  const auto atoms = m.atoms();
  const std::size_t n = atoms.size();
  if (n == 1) return 0.0;

  // Largest mass of a window of consecutive atoms whose span is below v.
  auto best_mass = [&](double v) {
    double best = 0.0;
    double window = 0.0;
    std::size_t j = 0;  // window is atoms i .. j-1 on the doubled sequence
    for (std::size_t i = 0; i < n; ++i) {
      if (j < i + 1) {
        j = i + 1;
        window = atoms[i].second;
      }
      while (j < i + n) {
        const double span = d_plus(atoms[i].first, atoms[j % n].first);
        if (!(span < v)) break;
        window += atoms[j % n].second;
        ++j;
      }
      best = std::max(best, window);
      window -= atoms[i].second;
    }
    return best;
  };
  auto feasible = [&](double v) { return best_mass(v) > 1.0 - v; };

  double lo = 0.0;
  double hi = 0.5 + tol;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return std::min(hi, 0.5);
}

}  // namespace crds

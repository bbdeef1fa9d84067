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

#include "crds/rds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "crds/philox.hpp"

namespace crds {

IfsModel::IfsModel(std::vector<Homeo> generators, std::vector<double> weights)
    : generators_(std::move(generators)), weights_(std::move(weights)) {
  if (generators_.empty()) throw std::invalid_argument("ifs: at least one generator required");
  if (weights_.size() != generators_.size()) throw std::invalid_argument("ifs: one weight per generator required");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("ifs: weights must be strictly positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("ifs: weights must sum to 1");
  cumulative_.resize(weights_.size());
  std::partial_sum(weights_.begin(), weights_.end(), cumulative_.begin());
  cumulative_.back() = 1.0;
}

IfsModel IfsModel::singleton(Homeo generator) { return IfsModel({std::move(generator)}, {1.0}); }

std::size_t IfsModel::select(double u) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

double NoiseRealization::uniform(std::int64_t i) const { return draw_uniform(key_.seed, key_.stream, key_.offset + i); }

std::size_t map_index(const IfsModel& model, const NoiseRealization& omega, std::int64_t i) {
  if (model.size() == 1) return 0;
  return model.select(omega.uniform(i));
}

void advance(const IfsModel& model, const NoiseRealization& omega, std::int64_t first_step, std::int64_t count,
             std::span<CirclePoint> points) {
  for (std::int64_t k = first_step + 1; k <= first_step + count; ++k) {
    const Homeo& f = model.generator(map_index(model, omega, k));
    for (auto& p : points) p = f.apply(p);
  }
}

void advance_inverse(const IfsModel& model, const NoiseRealization& omega, std::int64_t first_step,
                     std::int64_t count, std::span<CirclePoint> points) {
  for (std::int64_t k = first_step + 1; k <= first_step + count; ++k) {
    const Homeo& f = model.generator(map_index(model, omega, k));
    for (auto& p : points) p = f.apply_inverse(p);
  }
}

Trajectory evolve(const IfsModel& model, const NoiseRealization& omega, std::span<const CirclePoint> points,
                  std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("evolve: negative step count");
  Trajectory out(static_cast<std::size_t>(steps), points.size());
  std::copy(points.begin(), points.end(), out.row(0).begin());
  for (std::int64_t k = 1; k <= steps; ++k) {
    auto row = out.row(static_cast<std::size_t>(k));
    const auto prev = out.row(static_cast<std::size_t>(k - 1));
    std::copy(prev.begin(), prev.end(), row.begin());
    advance(model, omega, k - 1, 1, row);
  }
  return out;
}

void evolve_visit(const IfsModel& model, const NoiseRealization& omega, std::span<const CirclePoint> points,
                  std::int64_t steps, const StepVisitor& visit) {
  std::vector<CirclePoint> state(points.begin(), points.end());
  visit(0, state);
  for (std::int64_t k = 1; k <= steps; ++k) {
    advance(model, omega, k - 1, 1, state);
    visit(k, state);
  }
}

std::vector<double> evolve_arc(const IfsModel& model, const NoiseRealization& omega, const Arc& arc,
                               std::int64_t steps) {
  if (!(arc.length() > 0.0)) throw std::invalid_argument("evolve_arc: arc must have positive length");
  std::vector<double> lengths;
  lengths.reserve(static_cast<std::size_t>(steps) + 1);
  ArcImage image(arc);
  std::array<CirclePoint, 2> ends{arc.start, arc.end};
  lengths.push_back(image.length());
  for (std::int64_t k = 1; k <= steps; ++k) {
    advance(model, omega, k - 1, 1, ends);
    image.update(ends[0], ends[1]);
    lengths.push_back(image.length());
  }
  return lengths;
}

Trajectory inverse_evolve(const IfsModel& model, const NoiseRealization& omega, std::span<const CirclePoint> points,
                          std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("inverse_evolve: negative step count");
  Trajectory out(static_cast<std::size_t>(steps), points.size());
  std::copy(points.begin(), points.end(), out.row(0).begin());
  for (std::int64_t k = 1; k <= steps; ++k) {
    auto row = out.row(static_cast<std::size_t>(k));
    const auto prev = out.row(static_cast<std::size_t>(k - 1));
    std::copy(prev.begin(), prev.end(), row.begin());
    advance_inverse(model, omega, k - 1, 1, row);
  }
  return out;
}

std::vector<CirclePoint> pullback_point(const IfsModel& model, const NoiseRealization& omega, CirclePoint y,
                                        std::span<const std::int64_t> depths) {
  if (!std::is_sorted(depths.begin(), depths.end())) throw std::invalid_argument("pullback_point: depths must increase");
  std::vector<CirclePoint> out;
  out.reserve(depths.size());
  for (const std::int64_t m : depths) {
    if (m < 0) throw std::invalid_argument("pullback_point: negative depth");
    std::array<CirclePoint, 1> p{y};
    advance(model, omega.shift(-m), 0, m, p);
    out.push_back(p[0]);
  }
  return out;
}

}  // namespace crds

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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include "crds/circle.hpp"
#include "crds/rds.hpp"
#include "crds/sde.hpp"

namespace crds {

class Unsupported : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Either an IFS or the SDE sampled at integer times. Unit step k of the SDE
/// covers Euler steps (k-1) n + 1 .. k n of the Brownian path, n = 1/h, and a
/// noise offset of m unit steps shifts the path by m n Euler steps.
class System {
public:
  System(IfsModel model) : model_(std::move(model)) {}  // NOLINT(google-explicit-constructor)
  System(SdeModel model);                              // NOLINT(google-explicit-constructor)

  bool is_ifs() const { return std::holds_alternative<IfsModel>(model_); }
  const IfsModel& ifs() const { return std::get<IfsModel>(model_); }
  const SdeModel& sde() const { return std::get<SdeModel>(model_); }

  /// Applies unit steps first_step + 1 .. first_step + count in place.
  void advance(const NoiseKey& key, std::int64_t first_step, std::int64_t count, std::span<CirclePoint> points) const;
  /// IFS only: applies the inverse maps of the same steps.
  void advance_inverse(const NoiseKey& key, std::int64_t first_step, std::int64_t count,
                       std::span<CirclePoint> points) const;
  /// IFS only: log of the lift derivative of the map used at step k, at x.
  double log_derivative(const NoiseKey& key, std::int64_t step, CirclePoint x) const;
  /// Map index chosen at step k (IFS only).
  std::size_t map_at(const NoiseKey& key, std::int64_t step) const;

  std::string describe() const;

private:
  std::variant<IfsModel, SdeModel> model_;
};

}  // namespace crds

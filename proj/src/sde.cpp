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

#include "crds/sde.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "crds/philox.hpp"

namespace crds {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_values(std::istream& in, char separator) {
  std::vector<double> values;
  std::string token;
  while (std::getline(in, token, separator)) {
    const auto first = token.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || token[first] == '#') continue;
    std::size_t used = 0;
    values.push_back(std::stod(token.substr(first), &used));
  }
  return values;
}

}  // namespace

DriftSpec DriftSpec::sine(int harmonic) {
  if (harmonic < 1 || harmonic > 1024) throw std::invalid_argument("drift: sine harmonic must be in [1, 1024]");
  DriftSpec d;
  d.harmonic_ = harmonic;
  d.lipschitz_ = kTwoPi * harmonic;
  d.source_ = "sine:" + std::to_string(harmonic);
  return d;
}

DriftSpec DriftSpec::tabulated(std::vector<double> samples) {
  if (samples.size() < 2) throw std::invalid_argument("drift: a table needs at least two samples");
  DriftSpec d;
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) throw std::invalid_argument("drift: table samples must be finite");
    const double next = samples[(i + 1) % samples.size()];
    d.lipschitz_ = std::max(d.lipschitz_, std::abs(next - samples[i]) * n);
  }
  d.source_ = "table:[";
  for (std::size_t i = 0; i < samples.size(); ++i) d.source_ += (i ? "," : "") + num(samples[i]);
  d.source_ += "]";
  d.samples_ = std::move(samples);
  return d;
}

DriftSpec DriftSpec::parse(std::string_view spec) {
  const std::string text(spec);
  try {
    if (text.rfind("sine:", 0) == 0) {
      std::size_t used = 0;
      const int k = std::stoi(text.substr(5), &used);
      if (used != text.size() - 5) throw std::invalid_argument("trailing characters");
      return sine(k);
    }
    if (text.rfind("table:[", 0) == 0 && text.back() == ']') {
      std::istringstream in(text.substr(7, text.size() - 8));
      return tabulated(parse_values(in, ','));
    }
    if (text.rfind("table:", 0) == 0) {
      std::ifstream in(text.substr(6));
      if (!in) throw std::invalid_argument("cannot open " + text.substr(6));
      DriftSpec d = tabulated(parse_values(in, '\n'));
      d.source_ = text;
      return d;
    }
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("drift '" + text + "': " + e.what());
  }
  throw std::invalid_argument("drift '" + text + "': expected sine:k or table:...");
}

double DriftSpec::operator()(CirclePoint x) const {
  if (harmonic_ > 0) {
    // Reduce k x mod 1 exactly on the lattice so that b(x + j/k) == b(x) bit for bit.
    const std::uint64_t reduced = (x.units() * static_cast<std::uint64_t>(harmonic_)) & CirclePoint::kMask;
    return std::sin(kTwoPi * (static_cast<double>(reduced) * CirclePoint::kResolution));
  }
  const double n = static_cast<double>(samples_.size());
  const double t = x.value() * n;
  const double whole = std::floor(t);
  const auto i = static_cast<std::size_t>(whole) % samples_.size();
  const double w = t - whole;
  return samples_[i] * (1.0 - w) + samples_[(i + 1) % samples_.size()] * w;
}

std::string DriftSpec::to_string() const { return source_; }

int least_period_divisor(const DriftSpec& drift, double tol) {
  constexpr int kGrid = 1 << 12;
  for (int n = 64; n >= 2; --n) {
    double worst = 0.0;
    for (int i = 0; i < kGrid && worst <= tol; ++i) {
      const CirclePoint x = project(static_cast<double>(i) / kGrid);
      worst = std::max(worst, std::abs(drift(x.rotated(1.0 / n)) - drift(x)));
    }
    if (worst <= tol) return n;
  }
  return 1;
}

SdeModel::SdeModel(DriftSpec drift, double sigma, double h) : drift_(std::move(drift)), sigma_(sigma), h_(h) {
  if (!(sigma_ > 0.0) || !std::isfinite(sigma_)) throw std::invalid_argument("sde: sigma must be positive");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw std::invalid_argument("sde: h must be positive");
  if (drift_.lipschitz() > 0.0 && h_ > 1.0 / (4.0 * drift_.lipschitz()))
    throw std::invalid_argument("sde: h exceeds 1/(4 L_b) = " + num(1.0 / (4.0 * drift_.lipschitz())));
}

std::int64_t SdeModel::steps_per_unit() const {
  const double n = std::round(1.0 / h_);
  return std::abs(n * h_ - 1.0) <= 1e-12 ? static_cast<std::int64_t>(n) : 0;
}

double BrownianPath::increment(std::int64_t j) const {
  const std::int64_t first = offset_ + (j - 1) * stride_ + 1;
  double sum = 0.0;
  for (std::int64_t i = 0; i < stride_; ++i) sum += draw_normal(seed_, stream_, first + i);
  return sum * std::sqrt(base_step_);
}

BrownianPath BrownianPath::shift(std::int64_t steps) const {
  BrownianPath p = *this;
  p.offset_ += steps * stride_;
  return p;
}

BrownianPath BrownianPath::coarsened(std::int64_t factor) const {
  if (factor < 1) throw std::invalid_argument("brownian: coarsening factor must be positive");
  BrownianPath p = *this;
  p.stride_ *= factor;
  return p;
}

void euler_step(const SdeModel& model, double dw, std::span<Lift> lifts) {
  const double noise = model.sigma() * dw;
  for (auto& x : lifts) x = x.advanced(model.h() * model.drift()(x.base()) + noise);
}

void advance_lifts(const SdeModel& model, const BrownianPath& path, std::int64_t first_step, std::int64_t count,
                   std::span<Lift> lifts) {
  for (std::int64_t k = first_step + 1; k <= first_step + count; ++k) euler_step(model, path.increment(k), lifts);
}

namespace {

void check_order(std::span<const Lift> lifts, std::size_t step) {
  for (std::size_t i = 0; i + 1 < lifts.size(); ++i) {
    if (!(lifts[i] < lifts[i + 1]))
      throw OrderViolation("integrate_flow: lifts " + std::to_string(i) + " and " + std::to_string(i + 1) +
                           " crossed at step " + std::to_string(step));
  }
  if (lifts.size() > 1 && !(lift_gap(lifts.front(), lifts.back()) < 1.0))
    throw OrderViolation("integrate_flow: tracked lifts span a full turn at step " + std::to_string(step));
}

}  // namespace

LiftTrajectory integrate_flow(const SdeModel& model, const BrownianPath& path, std::span<const Lift> lifts,
                              double horizon) {
  if (std::abs(path.step() - model.h()) > 1e-15 * model.h())
    throw StepAlignmentError("integrate_flow: path step differs from model step");
  const double n = std::round(horizon / model.h());
  if (horizon < 0.0 || std::abs(n * model.h() - horizon) > 1e-9 * std::max(1.0, horizon))
    throw StepAlignmentError("integrate_flow: T = " + num(horizon) + " is not a multiple of h");
  if (lifts.empty()) throw std::invalid_argument("integrate_flow: no lifts to track");
  check_order(lifts, 0);
  const auto steps = static_cast<std::size_t>(n);
  LiftTrajectory out(steps, lifts.size());
  std::copy(lifts.begin(), lifts.end(), out.row(0).begin());
  for (std::size_t k = 1; k <= steps; ++k) {
    auto row = out.row(k);
    const auto prev = out.row(k - 1);
    std::copy(prev.begin(), prev.end(), row.begin());
    euler_step(model, path.increment(static_cast<std::int64_t>(k)), row);
    check_order(row, k);
  }
  return out;
}

WitnessResult witness_path(const SdeModel& model, const Arc& arc, double eta) {
  const double length = arc.length();
  if (!(length > 0.0 && length < 1.0)) throw PreconditionError("witness_path: need 0 < l(J) < 1");
  if (least_period_divisor(model.drift()) != 1)
    throw PreconditionError("witness_path: drift has least period below 1");
  if (!(eta > 0.0)) throw PreconditionError("witness_path: eta must be positive");

  const auto& b = model.drift();
  const double c1 = arc.start.value();
  constexpr int kGrid = 4096;
  double anchor = c1;
  double gap = 0.0;
  for (int i = 1; i <= kGrid; ++i) {
    const double a = c1 + static_cast<double>(i) / kGrid;
    const double g = b(a) - b(a + length);
    if (g > gap) {
      gap = g;
      anchor = a;
    }
  }
  if (!(gap > 0.0)) throw PreconditionError("witness_path: no point with b(a + l) < b(a) found");

  WitnessResult out{};
  out.anchor = anchor;
  out.drift_gap = gap;
  out.path = {eta, (anchor - c1) / (model.sigma() * eta)};
  if (out.path.ramp_end >= 1.0) throw NoContraction("witness_path: ramp does not finish within unit time");

  const double hs = std::min(model.h(), out.path.ramp_end / 64.0);
  out.substep = hs;
  double x1 = c1;
  double x2 = c1 + length;
  double t = 0.0;
  bool rate_taken = false;
  bool contracted = false;
  while (t < 1.0 && !(contracted && rate_taken)) {
    const double dt = std::min(hs, 1.0 - t);
    const double dw = out.path.value(t + dt) - out.path.value(t);
    x1 += dt * b(x1) + model.sigma() * dw;
    x2 += dt * b(x2) + model.sigma() * dw;
    t += dt;
    if (!rate_taken && t >= out.path.ramp_end) {
      out.initial_rate = b(x1) - b(x2);
      rate_taken = true;
    }
    if (!contracted && x2 - x1 < length) {
      out.contraction_time = t;
      out.achieved_length = x2 - x1;
      contracted = true;
    }
  }
  if (contracted) return out;
  throw NoContraction("witness_path: arc did not contract by t = 1; increase eta");
}

}  // namespace crds

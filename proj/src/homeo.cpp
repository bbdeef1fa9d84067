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

#include "crds/homeo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crds {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kStabilityTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double frac(double x) { return x - std::floor(x); }

Stability classify(double left_slope, double right_slope) {
  if (left_slope < 1.0 - kStabilityTol && right_slope < 1.0 - kStabilityTol) return Stability::attracting;
  if (left_slope > 1.0 + kStabilityTol && right_slope > 1.0 + kStabilityTol) return Stability::repelling;
  return Stability::neutral;
}

FixedPoint make_fixed(double x, double slope) { return {project(x), classify(slope, slope), slope}; }

void sort_unique(std::vector<FixedPoint>& points) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.point < b.point; });
  std::vector<FixedPoint> out;
  for (const auto& p : points) {
    if (out.empty() || distance(out.back().point, p.point) > 1e-12) out.push_back(p);
  }
  if (out.size() > 1 && distance(out.front().point, out.back().point) <= 1e-12) out.pop_back();
  points = std::move(out);
}

// ---- PiecewiseLinear lift tables ----

std::size_t segment_of(const std::vector<double>& table, double s) {
  auto it = std::upper_bound(table.begin(), table.end(), s);
  auto j = static_cast<std::size_t>(std::distance(table.begin(), it));
  j = j == 0 ? 0 : j - 1;
  return std::min(j, table.size() - 2);
}

double pwl_lift(const PiecewiseLinear& p, double x) {
  const double t = p.inputs.front() + frac(x - p.inputs.front());
  const std::size_t j = segment_of(p.inputs, t);
  const double slope = (p.outputs[j + 1] - p.outputs[j]) / (p.inputs[j + 1] - p.inputs[j]);
  return p.outputs[j] + slope * (t - p.inputs[j]) + (x - t);
}

double pwl_inverse_lift(const PiecewiseLinear& p, double y) {
  const double s = p.outputs.front() + frac(y - p.outputs.front());
  const std::size_t j = segment_of(p.outputs, s);
  const double slope = (p.inputs[j + 1] - p.inputs[j]) / (p.outputs[j + 1] - p.outputs[j]);
  return p.inputs[j] + slope * (s - p.outputs[j]);
}

double pwl_slope(const PiecewiseLinear& p, std::size_t j) {
  return (p.outputs[j + 1] - p.outputs[j]) / (p.inputs[j + 1] - p.inputs[j]);
}

FixedPointSet pwl_fixed_points(const PiecewiseLinear& p) {
  FixedPointSet result;
  const std::size_t k = p.inputs.size() - 1;
  std::size_t identity_segments = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const double x0 = p.inputs[j];
    const double x1 = p.inputs[j + 1];
    const double s = pwl_slope(p, j);
    const double left = pwl_slope(p, (j + k - 1) % k);
    const double right_of_end = pwl_slope(p, (j + 1) % k);
    const double d0 = p.outputs[j] - x0;
    const double d1 = p.outputs[j + 1] - x1;
    if (std::abs(s - 1.0) <= kStabilityTol) {
      if (std::abs(d0 - std::round(d0)) <= 1e-15) {
        ++identity_segments;
        result.points.push_back({project(x0), Stability::neutral, 1.0});
        result.points.push_back({project(x1), Stability::neutral, 1.0});
      }
      continue;
    }
    const auto m_lo = static_cast<long>(std::ceil(std::min(d0, d1) - 1e-15));
    const auto m_hi = static_cast<long>(std::floor(std::max(d0, d1) + 1e-15));
    for (long m = m_lo; m <= m_hi; ++m) {
      const double t = (p.outputs[j] - s * x0 - static_cast<double>(m)) / (1.0 - s);
      if (t < x0 - 1e-15 || t > x1 + 1e-15) continue;
      double l = s;
      double r = s;
      if (std::abs(t - x0) <= 1e-15) l = left;
      if (std::abs(t - x1) <= 1e-15) r = right_of_end;
      result.points.push_back({project(t), classify(l, r), r});
    }
  }
  if (identity_segments == k) {
    result.all_points = true;
    result.points.clear();
    return result;
  }
  sort_unique(result.points);
  return result;
}

// ---- Mobius ----

std::complex<double> unit(double x) { return std::polar(1.0, kTwoPi * x); }

double mobius_displacement(const Mobius& m, double x) {
  const std::complex<double> q = 1.0 + m.a * unit(-frac(x));
  return m.alpha + std::arg(q) / std::numbers::pi;
}

double mobius_derivative(const Mobius& m, double x) {
  const std::complex<double> q = 1.0 + m.a * unit(-frac(x));
  return (1.0 - std::norm(m.a)) / std::norm(q);
}

// ---- numeric fallback: sign changes of D(x) - m on a grid ----

FixedPointSet numeric_fixed_points(const Homeo& f) {
  constexpr int kGrid = 4096;
  std::vector<double> d(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) d[i] = f.displacement(static_cast<double>(i) / kGrid);
  const auto [lo_it, hi_it] = std::minmax_element(d.begin(), d.end());
  FixedPointSet result;
  if (*hi_it - *lo_it <= 1e-14 && std::abs(*lo_it - std::round(*lo_it)) <= 1e-14) {
    result.all_points = true;
    return result;
  }
  for (long m = static_cast<long>(std::ceil(*lo_it)); m <= static_cast<long>(std::floor(*hi_it)); ++m) {
    const double md = static_cast<double>(m);
    for (int i = 0; i < kGrid; ++i) {
      double a = static_cast<double>(i) / kGrid;
      double b = static_cast<double>(i + 1) / kGrid;
      double ga = d[i] - md;
      const double gb = d[i + 1] - md;
      if (ga == 0.0) {
        result.points.push_back(make_fixed(a, f.derivative(a)));
        continue;
      }
      if ((ga < 0.0) == (gb < 0.0) || gb == 0.0) continue;
      for (int it = 0; it < 80 && b - a > 1e-16; ++it) {
        const double mid = 0.5 * (a + b);
        const double gm = f.displacement(mid) - md;
        if ((gm < 0.0) == (ga < 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      const double x = 0.5 * (a + b);
      result.points.push_back(make_fixed(x, f.derivative(x)));
    }
  }
  sort_unique(result.points);
  return result;
}

}  // namespace

// ---- construction ----

Homeo Homeo::rotation(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha >= 1.0) throw InvalidHomeo("rotation: alpha must lie in [0,1)");
  return Homeo(Rotation{alpha});
}

Homeo Homeo::sine(double epsilon) {
  if (!std::isfinite(epsilon) || std::abs(epsilon) >= 1.0 / kTwoPi)
    throw InvalidHomeo("sine: |epsilon| must be below 1/(2 pi)");
  return Homeo(SinePerturbation{epsilon});
}

Homeo Homeo::mobius(double alpha, std::complex<double> a) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha >= 1.0) throw InvalidHomeo("mobius: alpha must lie in [0,1)");
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || std::abs(a) >= 1.0)
    throw InvalidHomeo("mobius: |a| must be below 1");
  return Homeo(Mobius{alpha, a});
}

Homeo Homeo::piecewise_linear(std::vector<std::pair<double, double>> breakpoints) {
  if (breakpoints.empty()) throw InvalidHomeo("pwl: at least one breakpoint required");
  PiecewiseLinear p;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const auto [x, y] = breakpoints[i];
    if (!std::isfinite(x) || !std::isfinite(y) || x < 0.0 || x >= 1.0 || y < 0.0 || y >= 1.0)
      throw InvalidHomeo("pwl: breakpoints must lie in [0,1) x [0,1)");
    if (i > 0 && !(x > breakpoints[i - 1].first)) throw InvalidHomeo("pwl: inputs must be strictly increasing");
  }
  const std::size_t k = breakpoints.size();
  p.inputs.reserve(k + 1);
  p.outputs.reserve(k + 1);
  double winding = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    p.inputs.push_back(breakpoints[i].first);
    if (i == 0) {
      p.outputs.push_back(breakpoints[0].second);
    } else {
      double step = breakpoints[i].second - breakpoints[i - 1].second;
      if (step <= 0.0) step += 1.0;
      winding += step;
      p.outputs.push_back(p.outputs.back() + step);
    }
  }
  if (k > 1) {
    double closing = breakpoints[0].second - breakpoints[k - 1].second;
    if (closing <= 0.0) closing += 1.0;
    winding += closing;
    if (std::abs(winding - 1.0) > 1e-12) throw InvalidHomeo("pwl: outputs are not in the cyclic order of the inputs");
  }
  p.inputs.push_back(breakpoints[0].first + 1.0);
  p.outputs.push_back(breakpoints[0].second + 1.0);
  if (p.outputs[k] <= p.outputs[k - 1]) throw InvalidHomeo("pwl: outputs are not in the cyclic order of the inputs");
  p.breakpoints = std::move(breakpoints);
  return Homeo(std::move(p));
}

Homeo Homeo::compose(std::vector<Homeo> parts) {
  if (parts.empty()) throw InvalidHomeo("compose: at least one map required");
  return Homeo(Composition{std::move(parts)});
}

// ---- evaluation ----

double Homeo::displacement(double x) const {
  return std::visit(overloaded{
                        [](const Rotation& r) { return r.alpha; },
                        [x](const SinePerturbation& s) { return s.epsilon * std::sin(kTwoPi * frac(x)); },
                        [x](const Mobius& m) { return mobius_displacement(m, x); },
                        [x](const PiecewiseLinear& p) { return pwl_lift(p, x) - x; },
                        [x](const Composition& c) {
                          double y = x;
                          for (const auto& part : c.parts) y = part.lift(y);
                          return y - x;
                        },
                    },
                    family_);
}

double Homeo::derivative(double x) const {
  return std::visit(overloaded{
                        [](const Rotation&) { return 1.0; },
                        [x](const SinePerturbation& s) { return 1.0 + kTwoPi * s.epsilon * std::cos(kTwoPi * frac(x)); },
                        [x](const Mobius& m) { return mobius_derivative(m, x); },
                        [x](const PiecewiseLinear& p) {
                          const double t = p.inputs.front() + frac(x - p.inputs.front());
                          return pwl_slope(p, segment_of(p.inputs, t));
                        },
                        [x](const Composition& c) {
                          double y = x;
                          double product = 1.0;
                          for (const auto& part : c.parts) {
                            product *= part.derivative(y);
                            y = part.lift(y);
                          }
                          return product;
                        },
                    },
                    family_);
}

bool Homeo::differentiable() const {
  return std::visit(overloaded{
                        [](const PiecewiseLinear&) { return false; },
                        [](const Composition& c) {
                          return std::all_of(c.parts.begin(), c.parts.end(),
                                             [](const Homeo& h) { return h.differentiable(); });
                        },
                        [](const auto&) { return true; },
                    },
                    family_);
}

CirclePoint Homeo::apply(CirclePoint x) const {
  if (const auto* c = std::get_if<Composition>(&family_)) {
    for (const auto& part : c->parts) x = part.apply(x);
    return x;
  }
  return x.rotated(displacement(x.value()));
}

CirclePoint Homeo::apply_inverse(CirclePoint y) const {
  return std::visit(
      overloaded{
          [y](const Rotation& r) { return y.rotated(-r.alpha); },
          [y](const SinePerturbation& s) {
            // x + eps sin(2 pi x) = v has its root in [v - |eps|, v + |eps|];
            // Newton, falling back to bisection whenever a step leaves the bracket.
            const double v = y.value();
            const double e = s.epsilon;
            double lo = v - std::abs(e);
            double hi = v + std::abs(e);
            double x = v;
            for (int it = 0; it < 100; ++it) {
              const double g = x + e * std::sin(kTwoPi * x) - v;
              if (g == 0.0) break;
              if (g < 0.0) lo = x; else hi = x;
              const double dg = 1.0 + kTwoPi * e * std::cos(kTwoPi * x);
              double next = x - g / dg;
              if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
              if (std::abs(next - x) <= 1e-17 || hi - lo <= 1e-17) {
                x = next;
                break;
              }
              x = next;
            }
            return project(x);
          },
          [y](const Mobius& m) {
            const CirclePoint u = y.rotated(-m.alpha);
            const Mobius back{0.0, -m.a};
            return u.rotated(mobius_displacement(back, u.value()));
          },
          [y](const PiecewiseLinear& p) { return project(pwl_inverse_lift(p, y.value())); },
          [y](const Composition& c) {
            CirclePoint x = y;
            for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) x = it->apply_inverse(x);
            return x;
          },
      },
      family_);
}

// ---- fixed points ----

FixedPointSet Homeo::fixed_points() const {
  return std::visit(
      overloaded{
          [](const Rotation& r) {
            FixedPointSet s;
            s.all_points = r.alpha == 0.0;
            return s;
          },
          [](const SinePerturbation& sp) {
            FixedPointSet s;
            if (sp.epsilon == 0.0) {
              s.all_points = true;
              return s;
            }
            s.points.push_back(make_fixed(0.0, 1.0 + kTwoPi * sp.epsilon));
            s.points.push_back(make_fixed(0.5, 1.0 - kTwoPi * sp.epsilon));
            return s;
          },
          [](const Mobius& m) {
            FixedPointSet s;
            if (m.a == std::complex<double>{}) {
              s.all_points = m.alpha == 0.0;
              return s;
            }
            // Fixed points on |z| = 1 of e^{i t}(z + a) = z (1 + conj(a) z).
            const std::complex<double> rot = unit(m.alpha);
            const std::complex<double> qa = std::conj(m.a);
            const std::complex<double> qb = 1.0 - rot;
            const std::complex<double> qc = -rot * m.a;
            const std::complex<double> disc = std::sqrt(qb * qb - 4.0 * qa * qc);
            for (const auto& z : {(-qb + disc) / (2.0 * qa), (-qb - disc) / (2.0 * qa)}) {
              if (std::abs(std::abs(z) - 1.0) > 1e-7) continue;
              double x = frac(std::arg(z) / kTwoPi);
              for (int it = 0; it < 5; ++it) {
                const double slope = mobius_derivative(m, x) - 1.0;
                if (std::abs(slope) < 1e-8) break;
                const double d = mobius_displacement(m, x);
                x -= (d - std::round(d)) / slope;
              }
              s.points.push_back(make_fixed(frac(x), mobius_derivative(m, x)));
            }
            sort_unique(s.points);
            return s;
          },
          [](const PiecewiseLinear& p) { return pwl_fixed_points(p); },
          [this](const Composition&) { return numeric_fixed_points(*this); },
      },
      family_);
}

SimpleClassification classify_simple(const Homeo& f, int horizon, double tol) {
  SimpleClassification out;
  const FixedPointSet fixed = f.fixed_points();
  if (fixed.all_points) {
    out.reason = "every point is fixed";
    return out;
  }
  if (fixed.points.size() != 2) {
    out.reason = "map has " + std::to_string(fixed.points.size()) + " fixed points, need exactly 2";
    return out;
  }
  const CirclePoint p = fixed.points[0].point;
  const CirclePoint q = fixed.points[1].point;
  constexpr int kGrid = 64;
  int to_p = 0;
  int to_q = 0;
  int unresolved = 0;
  for (int i = 0; i < kGrid; ++i) {
    CirclePoint x = project((i + 0.5) / kGrid);
    if (distance(x, p) < 1e-9 || distance(x, q) < 1e-9) x = x.rotated(0.25 / kGrid);
    for (int n = 0; n < horizon; ++n) x = f.apply(x);
    if (distance(x, p) < tol) ++to_p;
    else if (distance(x, q) < tol) ++to_q;
    else ++unresolved;
  }
  if (unresolved > 0) {
    out.verdict = SimpleVerdict::inconclusive;
    out.reason = std::to_string(unresolved) + " test points did not reach a fixed point by the horizon";
    return out;
  }
  if (to_p > 0 && to_q > 0) {
    out.reason = "test points converge to different fixed points";
    return out;
  }
  out.verdict = SimpleVerdict::simple;
  out.attractor = to_p > 0 ? p : q;
  out.repeller = to_p > 0 ? q : p;
  return out;
}

}  // namespace crds

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

#include <cmath>
#include <numbers>
#include <random>

#include "crds/analysis.hpp"
#include "doctest.h"

using namespace crds;

namespace {

CirclePoint P(double x) { return CirclePoint(x); }

System kn04() { return IfsModel({Homeo::rotation(0.6180339887), Homeo::sine(0.1)}, {0.5, 0.5}); }
System rotations() { return IfsModel({Homeo::rotation(0.6180339887), Homeo::rotation(0.4142135624)}, {0.5, 0.5}); }
System sine_only() { return IfsModel::singleton(Homeo::sine(0.1)); }
System weyl() { return IfsModel::singleton(Homeo::rotation(std::numbers::sqrt2 - 1)); }

bool has_point(const FixedPointSet& s, double x) {
  for (const auto& p : s.points)
    if (distance(p.point, P(x)) < 1e-9) return true;
  return false;
}

}  // namespace

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
}

TEST_CASE("sync test") {
  const auto rot = sync_test(rotations(), 1, P(0.1), P(0.6), 50, 300);
  CHECK(rot.fraction == 0.0);
  CHECK(rot.distances_constant);
  CHECK(rot.median_curve.size() == 301);
  CHECK(rot.fraction_curve.size() == 301);

  const auto kn = sync_test(kn04(), 2004, P(0.1), P(0.6), 100, 500, 1e-6, 4);
  CHECK(kn.fraction >= 0.95);
  CHECK(kn.median_curve.back() < kn.median_curve.front());

  const System gap = SdeModel(DriftSpec::sine(2), 1.0, 1.0 / 256);
  const auto s2 = sync_test(gap, 3, P(0.0), P(0.5), 20, 20, 1e-4, 4);
  CHECK(s2.fraction == 0.0);
  for (double d : s2.final_distances) CHECK(d == 0.5);

  CHECK_THROWS(sync_test(kn04(), 1, P(0.3), P(0.3), 5, 5));
}

TEST_CASE("local stability") {
  const std::vector<double> radii{0.01, 0.05, 0.1};
  const auto at = local_stability_test(sine_only(), 1, P(0.5), 10, 200, radii);
  for (double f : at.fractions) CHECK(f == 1.0);
  const auto rep = local_stability_test(sine_only(), 1, P(0.0), 10, 200, radii);
  for (double f : rep.fractions) CHECK(f == 0.0);
  const auto kn = local_stability_test(kn04(), 5, P(0.3), 200, 500, {0.005, 0.05, 0.2}, defaults::contract_tol, 4);
  CHECK(kn.fractions[0] >= kn.fractions[2]);
  CHECK(kn.fractions[0] > 0.9);
  CHECK_THROWS(local_stability_test(kn04(), 1, P(0.3), 5, 5, {0.6}));
}

TEST_CASE("compressibility") {
  const std::vector<Arc> arcs{{P(0.1), P(0.3)}, {P(0.5), P(0.45)}, {P(0.9), P(0.2)}};
  const auto rot = compressibility_test(rotations(), 1, arcs, 20, 100);
  CHECK(rot.found_count() == 0);
  const auto kn = compressibility_test(kn04(), 1, arcs, 20, 100);
  CHECK(kn.all_found());
  // the long arc around the repeller only grows; the short one around the attractor shrinks
  const auto det = compressibility_test(sine_only(), 1, {{P(0.55), P(0.45)}, {P(0.45), P(0.55)}}, 1, 50);
  CHECK_FALSE(det.witnesses[0].found);
  CHECK(det.witnesses[1].found);

  // a witness replays
  const auto& w = kn.witnesses[0];
  const double l = image_length(kn04(), realization_key(1, w.realization), arcs[0], w.time);
  CHECK(l == w.length);
  CHECK(l < arcs[0].length());
}

TEST_CASE("deterministic fixed points") {
  CHECK(deterministic_fixed_points(IfsModel({Homeo::sine(0.1), Homeo::rotation(0.3)}, {0.5, 0.5})).empty());
  const auto one = deterministic_fixed_points(IfsModel::singleton(Homeo::sine(0.1)));
  CHECK(one.points.size() == 2);
  CHECK(has_point(one, 0.0));
  CHECK(has_point(one, 0.5));
  const auto two = deterministic_fixed_points(IfsModel({Homeo::sine(0.1), Homeo::sine(-0.05)}, {0.5, 0.5}));
  CHECK(two.points.size() == 2);
  CHECK(has_point(two, 0.0));
  CHECK(has_point(two, 0.5));
  CHECK(deterministic_fixed_points(kn04().ifs()).empty());
}

TEST_CASE("minimality") {
  const auto irr = minimality_check(IfsModel::singleton(Homeo::rotation(std::numbers::sqrt2 - 1)), Direction::forward, 256, 4096);
  CHECK(irr.minimal);
  const auto sine = minimality_check(IfsModel::singleton(Homeo::sine(0.1)), Direction::forward, 256, 4096);
  CHECK_FALSE(sine.minimal);
  CHECK_FALSE(sine.obstruction.empty());
  const auto half = minimality_check(IfsModel::singleton(Homeo::rotation(0.5)), Direction::forward, 256, 4096);
  CHECK_FALSE(half.minimal);
  CHECK(minimality_check(kn04().ifs(), Direction::reverse, 256, 4096).minimal);
  CHECK_THROWS(minimality_check(kn04().ifs(), Direction::forward, 32, 10));
}

TEST_CASE("crack points") {
  for (double k : {0.0, 0.3, 0.77}) {
    const auto e = crack_point(sine_only(), realization_key(1, 0), P(k), 200);
    REQUIRE(e.present);
    CHECK_FALSE(e.inconclusive);
    CHECK(distance(e.location, P(0.0)) < 1e-9);
  }
  CHECK_FALSE(crack_point(rotations(), realization_key(1, 0), P(0.0), 500).present);

  // estimate invariant: J_{c - delta} contracts, J_{c + delta} covers
  const auto kn = kn04();
  for (std::size_t r = 0; r < 5; ++r) {
    const auto key = realization_key(45, r);
    const auto e = crack_point(kn, key, P(0.0), 2000);
    REQUIRE(e.present);
    if (e.inconclusive) continue;
    const double c = e.location.value();
    const double d = e.bracket_width;
    if (c > d && c + d < 1.0) {
      CHECK(image_length(kn, key, Arc{P(0.0), P(c - d)}, 2000) < defaults::contract_tol);
      CHECK(image_length(kn, key, Arc{P(0.0), P(c + d)}, 2000) > 1.0 - defaults::contract_tol);
    }
  }
}

TEST_CASE("arc images are monotone in nested arcs") {
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto kn = kn04();
  for (int i = 0; i < 100; ++i) {
    double v = u(rng), w = u(rng);
    if (v > w) std::swap(v, w);
    if (w - v < 1e-6) continue;
    const auto key = realization_key(rng(), 0);
    const double a = image_length(kn, key, Arc{P(0.0), P(v)}, 100);
    const double b = image_length(kn, key, Arc{P(0.0), P(w)}, 100);
    REQUIRE(a <= b);
  }
}

TEST_CASE("crack law and equivariance") {
  const auto det = crack_law(sine_only(), 1, 10, 200, 64);
  REQUIRE(det.law.has_value());
  CHECK(det.max_bin_mass == doctest::Approx(1.0));
  CHECK_FALSE(det.atomless);
  CHECK(det.law->mass(Arc{P(0.99), P(0.01)}) == doctest::Approx(1.0));

  const auto none = crack_law(rotations(), 1, 5, 200, 64);
  CHECK(none.present == 0);

  const auto eq = crack_equivariance(kn04(), 7, 10, 10, 2000, defaults::contract_tol, 4);
  CHECK(eq.checked > 0);
  CHECK(eq.within == eq.checked);
}

TEST_CASE("stationary measures") {
  OccupationParams p;
  p.realizations = 10;
  p.burn_in = 50;
  p.samples = 5;
  p.start = P(0.5);
  const auto dirac = stationary_measure(sine_only(), 1, p);
  CHECK(dirac.max_bin_mass(64) == doctest::Approx(1.0));
  CHECK(dirac.mass(Arc{P(0.49), P(0.52)}) == doctest::Approx(1.0));

  OccupationParams q;
  q.realizations = 200;
  q.burn_in = 10;
  q.samples = 100;
  q.bins = 64;
  CHECK(ks_to_uniform(stationary_measure(weyl(), 3, q)) < 0.03);
  CHECK(ks_to_uniform(reverse_stationary_measure(rotations(), 3, q)) < 0.03);

  const auto rev = reverse_stationary_measure(sine_only(), 1, q);
  CHECK(rev.mass(Arc{P(0.98), P(0.02)}) > 0.99);
  CHECK_THROWS_AS(reverse_stationary_measure(System(SdeModel(DriftSpec::sine(1), 1.0, 1.0 / 256)), 1, q), Unsupported);
}

TEST_CASE("martingale check") {
  const auto u = EmpiricalMeasure::uniform(64);
  const Arc j{P(0.1), P(0.4)};
  const auto rot = martingale_check(rotations(), u, j, 5, 5, 100, 10, 1);
  CHECK(rot.deviation < 1e-12);
  const auto zero = martingale_check(kn04(), u, j, 5, 0, 10, 10, 1);
  CHECK(zero.deviation == 0.0);
  CHECK(rot.bound == doctest::Approx(0.3));
}

TEST_CASE("contraction probability check") {
  const auto u = EmpiricalMeasure::uniform(64);
  const auto tiny = contraction_check(kn04(), u, Arc{P(0.3), P(0.31)}, 50, 200, defaults::contract_tol, 1);
  CHECK(tiny.predicted == doctest::Approx(0.99));
  const auto big = contraction_check(kn04(), u, Arc{P(0.31), P(0.3)}, 50, 200, defaults::contract_tol, 1);
  CHECK(big.predicted == doctest::Approx(0.01));
  CHECK(tiny.predicted + tiny.complement_predicted == doctest::Approx(1.0));
  CHECK(tiny.empirical >= big.empirical);
}

TEST_CASE("birkhoff averages") {
  const Arc quarter{P(0.0), P(0.25)};
  CHECK(std::abs(birkhoff_average(weyl(), realization_key(1, 0), P(0.1), quarter, 100000) - 0.25) < 0.02);
  CHECK(birkhoff_average(sine_only(), realization_key(1, 0), P(0.5), Arc{P(0.4), P(0.6)}, 1000) == 1.0);
  CHECK(birkhoff_average(sine_only(), realization_key(1, 0), P(0.5), quarter, 1000) == 0.0);
  const auto key = realization_key(45, 3);
  const double a = birkhoff_average(kn04(), key, P(0.1), quarter, 100000);
  const double b = birkhoff_average(kn04(), key, P(0.7), quarter, 100000);
  CHECK(std::abs(a - b) < 0.02);
}

TEST_CASE("lyapunov exponents") {
  CHECK(lyapunov_exponent(rotations(), realization_key(1, 0), P(0.3), 1000) == 0.0);
  const double det = lyapunov_exponent(sine_only(), realization_key(1, 0), P(0.25), 10000);
  CHECK(std::abs(det - std::log(1.0 - 0.2 * std::numbers::pi)) < 1e-3);
  const auto kn = lyapunov_over(kn04(), 1, P(0.3), 100, 2000, 4);
  CHECK(kn.mean + 3 * kn.stderr_ < 0.0);
  CHECK_THROWS_AS(lyapunov_exponent(System(SdeModel(DriftSpec::sine(1), 1.0, 1.0 / 256)), realization_key(1, 0), P(0.3), 10),
                  Unsupported);
}

TEST_CASE("attractor and repeller") {
  const auto det = attractor_repeller(sine_only(), 1, 5, {50, 100, 200}, P(0.25), P(0.75), 200);
  CHECK(det.converged == 5);
  for (const auto& row : det.rows) {
    CHECK(distance(row.attractor, P(0.5)) < 1e-9);
    CHECK(distance(row.repeller.location, P(0.0)) < 1e-9);
  }
  const auto kn = attractor_repeller(kn04(), 510, 10, {250, 500, 1000, 2000}, P(0.25), P(0.75), 2000, 1e-8, 4);
  CHECK(kn.converged >= 9);
  CHECK(kn.max_equivariance < 1e-6);
  for (const auto& row : kn.rows)
    if (row.converged) CHECK(row.separation > 10 * row.residual);
}

TEST_CASE("spread decay") {
  const auto sd = spread_decay(kn04(), 512, 256, 4, 500, 4);
  REQUIRE(sd.median.size() == sd.steps.size());
  CHECK(sd.steps.front() == 0);
  CHECK(sd.steps.back() == 500);
  CHECK(sd.median.front() > 0.4);
  CHECK(sd.median.back() < 1e-3);
}

TEST_CASE("results serialise") {
  const auto v = sync_test(kn04(), 1, P(0.1), P(0.6), 3, 10);
  const auto j = v.to_json();
  CHECK(j.contains("sync_fraction"));
  CHECK(minimality_check(kn04().ifs(), Direction::reverse, 64, 100).to_json().contains("minimal"));
}

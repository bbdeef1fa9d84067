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

#include <random>

#include "crds/measure.hpp"
#include "doctest.h"

using namespace crds;

namespace {

CirclePoint P(double x) { return CirclePoint(x); }

// Smallest v on a 1/G grid with some window of span below v carrying mass above 1 - v.
double spread_oracle(const std::vector<CirclePoint>& x, const std::vector<double>& w, int grid) {
  double total = 0.0;
  for (double m : w) total += m;
  for (int k = 1; k <= grid / 2; ++k) {
    const double v = static_cast<double>(k) / grid;
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double m = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j)
        if (d_plus(x[i], x[j]) < v) m += w[j] / total;
      best = std::max(best, m);
    }
    if (best > 1.0 - v) return v;
  }
  return 0.5;
}

}  // namespace

TEST_CASE("sample masses") {
  const auto m = EmpiricalMeasure::from_samples({P(0.1), P(0.2), P(0.2), P(0.9)});
  CHECK(m.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.mass(Arc{P(0.1), P(0.2)}) == doctest::Approx(0.75));
  CHECK(m.mass(Arc{P(0.15), P(0.5)}) == doctest::Approx(0.5));
  CHECK(m.mass(Arc{P(0.85), P(0.15)}) == doctest::Approx(0.5));
  CHECK(m.mass(Arc{P(0.3), P(0.3)}) == 0.0);
  CHECK(m.mass(Arc{P(0.2), P(0.2)}) == doctest::Approx(0.5));
  CHECK(m.max_bin_mass(10) == doctest::Approx(0.5));

  const auto w = EmpiricalMeasure::from_samples({P(0.5), P(0.25)}, {3.0, 1.0});
  CHECK(w.mass(Arc{P(0.4), P(0.6)}) == doctest::Approx(0.75));
  CHECK(w.atoms().front().first == P(0.25));
  CHECK_THROWS(EmpiricalMeasure::from_samples({P(0.5)}, {1.0, 2.0}));
  CHECK_THROWS(EmpiricalMeasure::from_samples({P(0.5)}, {-1.0}));
}

TEST_CASE("histogram masses use proportional overlap") {
  const auto u = EmpiricalMeasure::uniform(4);
  CHECK(u.mass(Arc{P(0.1), P(0.3)}) == doctest::Approx(0.2));
  CHECK(u.mass(Arc{P(0.9), P(0.05)}) == doctest::Approx(0.15));
  CHECK(u.total() == doctest::Approx(1.0).epsilon(1e-12));
  const auto h = EmpiricalMeasure::from_histogram({1.0, 0.0, 0.0, 3.0});
  CHECK(h.mass(Arc{P(0.125), P(0.875)}) == doctest::Approx(0.125 + 0.375));
  CHECK(h.bin_masses(2)[1] == doctest::Approx(0.75));
  const auto c = EmpiricalMeasure::from_counts({2, 0, 2, 0});
  CHECK(c.mass(Arc{P(0.5), P(0.75)}) == doctest::Approx(0.5));
  CHECK(total_variation(u, u, 16) == 0.0);
  CHECK(total_variation(u, h, 4) == doctest::Approx(0.5));
  CHECK(ks_to_uniform(u) < 1e-12);
}

TEST_CASE("spread examples") {
  CHECK(spread(EmpiricalMeasure::from_samples({P(0.3), P(0.3), P(0.3)})) == 0.0);
  CHECK(spread(EmpiricalMeasure::from_samples({P(0.0), P(0.5)})) == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t b : {8, 64, 256}) {
    const double d = spread(EmpiricalMeasure::uniform(b));
    CHECK(d <= 0.5);
    CHECK(d >= 0.5 - 1.0 / static_cast<double>(b));
  }
  // 0.9 of the mass in a tight cluster
  const auto cl = EmpiricalMeasure::from_samples({P(0.2), P(0.201), P(0.7)}, {0.45, 0.45, 0.1});
  CHECK(spread(cl) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("spread against a brute-force oracle") {
  std::mt19937_64 rng(512);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 12);
  const int grid = 4000;
  for (int r = 0; r < 20; ++r) {
    std::vector<CirclePoint> x;
    std::vector<double> w;
    const int n = count(rng);
    const double centre = u(rng), width = u(rng) * 0.6;
    for (int i = 0; i < n; ++i) {
      x.push_back(P(centre + width * u(rng)));
      w.push_back(0.05 + u(rng));
    }
    const double d = spread(EmpiricalMeasure::from_samples(x, w));
    const double o = spread_oracle(x, w, grid);
    CHECK(d <= o + 1e-12);
    CHECK(d >= o - 1.0 / grid - 1e-12);

    std::vector<CirclePoint> y;
    const double turn = u(rng);
    for (auto p : x) y.push_back(p.rotated(turn));
    CHECK(spread(EmpiricalMeasure::from_samples(y, w)) == doctest::Approx(d).epsilon(1e-12));
    CHECK(d >= 0.0);
    CHECK(d <= 0.5);
  }
}

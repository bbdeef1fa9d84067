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

// Acceptance checks: one PASS/FAIL line per criterion, details indented below.
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "crds/analysis.hpp"
#include "crds/presets.hpp"
#include "crds/runner.hpp"

using namespace crds;

namespace {

CirclePoint P(double x) { return CirclePoint(x); }

System kn04() { return IfsModel({Homeo::rotation(0.6180339887), Homeo::sine(0.1)}, {0.5, 0.5}); }
System rotations() { return IfsModel({Homeo::rotation(0.6180339887), Homeo::rotation(0.4142135624)}, {0.5, 0.5}); }
System sine_only() { return IfsModel::singleton(Homeo::sine(0.1)); }

std::vector<Homeo> families() {
  return {Homeo::rotation(0.3),
          Homeo::sine(0.1),
          Homeo::sine(-0.15),
          Homeo::mobius(0.2, {0.3, -0.4}),
          Homeo::piecewise_linear({{0.1, 0.2}, {0.4, 0.3}, {0.8, 0.95}}),
          Homeo::compose({Homeo::sine(0.1), Homeo::rotation(0.4), Homeo::mobius(0.1, {0.2, 0.1})})};
}

bool closed_form_inverse(const Homeo& f) {
  return std::holds_alternative<Rotation>(f.family()) || std::holds_alternative<Mobius>(f.family()) ||
         std::holds_alternative<PiecewiseLinear>(f.family());
}

class Criterion {
public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    std::printf("    [%s] %s\n", ok ? "ok" : "FAILED", buf);
    ok_ = ok_ && ok;
  }

  bool finish() const {
    std::printf("%s criterion %d: %s\n", ok_ ? "PASS" : "FAIL", id_, title_.c_str());
    std::fflush(stdout);
    return ok_;
  }

private:
  int id_;
  std::string title_;
  bool ok_ = true;
};

std::map<std::pair<std::string, int>, RunReport> g_reports;

const RunReport& run_preset(const std::string& name, int workers = 1) {
  const auto key = std::make_pair(name, workers);
  auto it = g_reports.find(key);
  if (it == g_reports.end()) it = g_reports.emplace(key, run_experiment(preset(name), workers)).first;
  return it->second;
}

double num(const Json& j, const char* key) { return j.at(key).get<double>(); }

bool exact_identities() {
  Criterion c(1, "exact identities");
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  bool anti = true, metric = true, diam = true;
  for (int i = 0; i < 100000; ++i) {
    const CirclePoint x = P(u(rng)), y = P(u(rng));
    if (x == y) continue;
    anti = anti && d_plus(x, y) + d_plus(y, x) == 1.0;
    metric = metric && distance(x, y) == std::min(d_plus(x, y), 1.0 - d_plus(x, y));
    const Arc a{x, y};
    diam = diam && arc_diameter(a) == std::min(a.length(), 0.5);
  }
  c.check(anti, "d+(x,y) + d+(y,x) = 1 on 1e5 pairs");
  c.check(metric, "d = min(d+, 1 - d+) on 1e5 pairs");
  c.check(diam, "diam = min(l, 1/2) on 1e5 arcs");

  const IfsModel m = kn04().ifs();
  bool split = true;
  for (int i = 0; i < 200; ++i) {
    const NoiseRealization w(rng(), i);
    const std::int64_t s = static_cast<std::int64_t>(rng() % 300), t = static_cast<std::int64_t>(rng() % 300);
    const std::vector<CirclePoint> x{P(u(rng))};
    const auto joint = evolve(m, w, x, s + t);
    const auto first = evolve(m, w, x, s);
    const std::vector<CirclePoint> mid{first.at(first.steps(), 0)};
    const auto second = evolve(m, shift(w, s), mid, t);
    split = split && second.at(second.steps(), 0) == joint.at(joint.steps(), 0);
  }
  c.check(split, "cocycle split bit-exact on 200 (omega, s, t, x)");

  bool images = true;
  for (int i = 0; i < 100; ++i) {
    const NoiseRealization w(rng(), 0);
    const Arc j{P(u(rng)), P(u(rng))};
    if (!(j.length() > 0.0)) continue;
    const auto lengths = evolve_arc(m, w, j, 100);
    const std::vector<CirclePoint> ends{j.start, j.end};
    const auto tr = evolve(m, w, ends, 100);
    for (std::size_t k = 0; k <= 100; ++k)
      if (lengths[k] < 1.0) images = images && lengths[k] == d_plus(tr.at(k, 0), tr.at(k, 1));
  }
  c.check(images, "arc-image length equals endpoint d+ on 100 arcs x 100 steps");

  bool orient = true, inverse = true;
  for (const auto& f : families()) {
    const double tol = closed_form_inverse(f) ? 1e-12 : 1e-9;
    for (int i = 0; i < 1000; ++i) {
      const CirclePoint a = P(u(rng)), b = P(u(rng)), d = P(u(rng));
      const auto before = cyclic_order(a, b, d);
      if (before != Orientation::degenerate) orient = orient && cyclic_order(f.apply(a), f.apply(b), f.apply(d)) == before;
      inverse = inverse && distance(f.apply_inverse(f.apply(a)), a) <= tol && distance(f.apply(f.apply_inverse(a)), a) <= tol;
    }
  }
  c.check(orient, "orientation preserved on 1000 triples per map family");
  c.check(inverse, "inverse round trips within 1e-12 (closed form) / 1e-9 (numeric)");

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.check(secs < 5.0, "fast suite took %.2f s (< 5 s)", secs);
  return c.finish();
}

bool kn04_positive() {
  Criterion c(2, "kn04-sync: preconditions, then synchronisation and local stability");
  const auto& r = run_preset("kn04-sync");
  for (const auto& p : r.preconditions) c.check(p.passed, "precondition %s", p.name.c_str());
  c.check(r.preconditions.size() == 4, "%zu preconditions evaluated", r.preconditions.size());
  const double f = num(r.result, "sync_fraction");
  c.check(f >= 0.95, "sync fraction %.4f >= 0.95 (N = 500, T = 500, tol 1e-6)", f);
  const auto ls = local_stability_test(kn04(), derive_seed(2004, 7), P(0.3), 500, 500, {0.01}, defaults::contract_tol, 8);
  c.check(ls.fractions[0] >= 0.9, "local stability fraction %.4f >= 0.9 at radius 0.01", ls.fractions[0]);
  return c.finish();
}

bool negative_scenarios() {
  Criterion c(3, "rotations and the singleton simple map");
  const std::vector<Arc> arcs{{P(0.0), P(0.1)}, {P(0.2), P(0.5)}, {P(0.3), P(0.9)}, {P(0.8), P(0.1)}, {P(0.6), P(0.55)}};
  const auto comp = compressibility_test(rotations(), 7, arcs, 100, 100, 8);
  c.check(comp.found_count() == 0, "%zu witnesses over %zu arcs x %zu probes", comp.found_count(), arcs.size(), comp.probes());
  const auto& r = run_preset("rotations-nosync");
  c.check(num(r.result, "sync_fraction") == 0.0, "rotations sync fraction %.4f", num(r.result, "sync_fraction"));
  c.check(r.result.at("distances_constant").get<bool>(), "rotation distances exactly constant");

  const auto generic = sync_test(sine_only(), 1, P(0.1), P(0.6), 100, 500);
  c.check(generic.fraction == 1.0, "simple map: generic pair sync fraction %.4f", generic.fraction);
  const auto det = preset("det-simple");
  const auto ls = local_stability_test(det.build_system(), det.seed, det.point("x", 0.0), det.realizations, det.horizon,
                                       det.numbers("radii", {}), det.number("tol", 1e-4));
  bool zero = true;
  for (double f : ls.fractions) zero = zero && f == 0.0;
  c.check(zero, "simple map: local stability at the repeller is 0 for every radius");
  return c.finish();
}

bool sde_example() {
  Criterion c(4, "circle SDE: sine_1 synchronises, sine_2 keeps a half gap, witness path contracts");
  const auto& s1 = run_preset("sde-sine1");
  c.check(num(s1.result, "sync_fraction") >= 0.95, "sine_1 fraction below 1e-4 at T = 50: %.4f",
          num(s1.result, "sync_fraction"));
  const auto& s2 = run_preset("sde-sine2-gap");
  c.check(num(s2.result, "sync_fraction") == 0.0, "sine_2 preset sync fraction %.4f", num(s2.result, "sync_fraction"));
  const SdeModel m(DriftSpec::sine(2), 1.0, 1.0 / 256);
  bool exact = true;
  const std::vector<Lift> x{Lift(0.0), Lift(0.5)};
  for (std::uint64_t p = 0; p < 20; ++p) {
    const auto tr = integrate_flow(m, BrownianPath(13, p, 1.0 / 256), x, 50.0);
    for (std::size_t k = 0; k <= tr.steps(); ++k) exact = exact && lift_gap(tr.at(k, 0), tr.at(k, 1)) == 0.5;
  }
  c.check(exact, "sine_2 gap bit-exactly 1/2 at every step on 20 paths to T = 50");
  const auto w = witness_path(SdeModel(DriftSpec::sine(1), 1.0, 1.0 / 256), Arc{P(0.1), P(0.4)}, 100.0);
  c.check(w.contraction_time > 0.0 && w.achieved_length < 0.3, "witness: t = %.4f, length %.6f < 0.3",
          w.contraction_time, w.achieved_length);
  return c.finish();
}

bool lemma34() {
  Criterion c(5, "contraction probability of [0, 1/2] against 1 - rho(J)");
  const auto& r = run_preset("lemma34");
  const double diff = num(r.result, "difference");
  c.check(diff < 0.05, "|%.4f - %.4f| = %.4f < 0.05", num(r.result, "empirical"), num(r.result, "predicted"), diff);
  const double sum = num(r.result, "prediction_sum");
  c.check(std::abs(sum - 1.0) <= 0.02, "complement predictions sum to %.6f", sum);
  return c.finish();
}

bool martingale() {
  Criterion c(6, "martingale check");
  OccupationParams p;
  p.realizations = 2000;
  const auto rho = reverse_stationary_measure(kn04(), 34, p, 8);
  const auto m = martingale_check(kn04(), rho, Arc{P(0.0), P(0.5)}, 20, 20, 2000, 10, derive_seed(34, 2), 8);
  const double bound = 3.0 / std::sqrt(2000.0) + 2.0 / 64.0;
  c.check(m.deviation < bound, "deviation %.5f < 3/sqrt(M) + 2/B = %.5f (M = 2000, K = 10, s = t = 20)", m.deviation,
          bound);
  return c.finish();
}

bool crack_points() {
  Criterion c(7, "crack points, their law, equivariance and Birkhoff averages");
  const auto& r = run_preset("crack-law");
  const double present = num(r.result, "present_fraction");
  c.check(present >= 0.99, "crack point present for %.4f of 500 realizations", present);
  const double mb = num(r.result, "max_bin_mass");
  c.check(mb <= 3.0 / 64.0, "max bin mass %.4f <= 3/64 = %.4f", mb, 3.0 / 64.0);
  const auto& eq = r.result.at("equivariance");
  c.check(eq.at("within") == eq.at("checked") && eq.at("checked").get<int>() == 50,
          "equivariance within bracket + 1e-6 for %d of %d (max residual %.3g)", eq.at("within").get<int>(),
          eq.at("checked").get<int>(), num(eq, "max_residual"));
  const auto& b = run_preset("birkhoff");
  const double d = num(b.result, "max_difference");
  c.check(d < 0.02, "Birkhoff averages %.4f, %.4f vs rho_stat(J) %.4f: max difference %.4f < 0.02",
          num(b.result, "average_x1"), num(b.result, "average_x2"), num(b.result, "stationary_mass"), d);
  return c.finish();
}

bool attractor_repeller_pair() {
  Criterion c(8, "pullback attractor, crack-point repeller and spread decay");
  const auto& r = run_preset("pair-estimate");
  const double conv = num(r.result, "converged_fraction");
  c.check(conv >= 0.95, "anchor agreement < 1e-8 at depth 2000 for %.4f of realizations", conv);
  const double sep = num(r.result, "min_separation");
  c.check(sep > 1e-3, "min d(a, r) over converged = %.6g (> 1e-3)", sep);
  const double eq = num(r.result, "max_equivariance");
  c.check(eq < 1e-6, "random fixed point equivariance %.3g < 1e-6", eq);
  const auto& s = run_preset("spread-decay");
  const double sp = num(s.result, "final_max_spread");
  c.check(sp < 1e-3, "image-cloud spread at T = 500: max over realizations %.3g < 1e-3", sp);
  return c.finish();
}

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

std::vector<double> grid_roots(const Homeo& f, int grid) {
  auto g = [&](double x) {
    const double d = f.lift(x) - x;
    return d - std::round(d);
  };
  std::vector<double> roots;
  double prev = g(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    const double cur = g(x);
    if (prev == 0.0) roots.push_back(static_cast<double>(i - 1) / grid);
    else if (cur != 0.0 && (prev < 0.0) != (cur < 0.0) && std::abs(prev - cur) < 0.5)
      roots.push_back(x - 0.5 / grid);
    prev = cur;
  }
  return roots;
}

bool oracles() {
  Criterion c(9, "oracle equivalences");
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int grid = 4000;
  int agree = 0;
  for (int r = 0; r < 20; ++r) {
    std::vector<CirclePoint> x;
    std::vector<double> w;
    const int n = 1 + static_cast<int>(rng() % 12);
    const double centre = u(rng), width = 0.6 * u(rng);
    for (int i = 0; i < n; ++i) {
      x.push_back(P(centre + width * u(rng)));
      w.push_back(0.05 + u(rng));
    }
    const double d = spread(EmpiricalMeasure::from_samples(x, w));
    const double o = spread_oracle(x, w, grid);
    if (d <= o + 1e-12 && d >= o - 1.0 / grid - 1e-12) ++agree;
  }
  c.check(agree == 20, "spread within one grid step (1/%d) of the brute-force oracle on %d of 20 measures", grid, agree);

  auto maps = families();
  maps.push_back(Homeo::mobius(0.05, {0.6, 0.1}));
  maps.push_back(Homeo::piecewise_linear({{0.25, 0.4}, {0.75, 0.7}, {0.9, 0.9}}));
  bool fp = true;
  for (const auto& f : maps) {
    const auto found = f.fixed_points();
    const auto roots = grid_roots(f, 1 << 14);
    bool ok = found.points.size() == roots.size();
    for (double x : roots) {
      double best = 1.0;
      for (const auto& p : found.points) best = std::min(best, distance(p.point, P(x)));
      ok = ok && best <= 1.0 / (1 << 14);
    }
    if (!ok) std::printf("      fixed point mismatch for %s\n", f.to_string().c_str());
    fp = fp && ok;
  }
  c.check(fp, "fixed points match the 2^14 grid sign-change oracle on %zu maps", maps.size());

  const double lam = lyapunov_exponent(sine_only(), realization_key(1, 0), P(0.25), 10000);
  const double want = std::log(1.0 - 2.0 * std::numbers::pi * 0.1);
  c.check(std::abs(lam - want) < 1e-3, "Lyapunov exponent %.6f vs log(1 - 0.2 pi) = %.6f", lam, want);
  return c.finish();
}

bool reproducibility() {
  Criterion c(10, "byte-identical CSV for 1 and 8 workers");
  for (const auto& p : presets()) {
    const auto& one = run_preset(p.name, 1);
    const auto& eight = run_preset(p.name, 8);
    c.check(!one.csv.empty() && one.csv == eight.csv, "%s (%zu bytes)", p.name.c_str(), one.csv.size());
  }
  return c.finish();
}

}  // namespace

int main() {
  int failed = 0;
  for (auto* criterion : {exact_identities, kn04_positive, negative_scenarios, sde_example, lemma34, martingale,
                          crack_points, attractor_repeller_pair, oracles, reproducibility}) {
    try {
      if (!criterion()) ++failed;
    } catch (const std::exception& e) {
      std::printf("    [FAILED] exception: %s\n", e.what());
      std::printf("FAIL criterion (aborted)\n");
      ++failed;
    }
  }
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

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

#include "crds/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "crds/sde.hpp"

namespace crds {

namespace {

class Csv {
public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { line(header); }

  template <class... Cells>
  void row(const Cells&... cells) {
    std::vector<std::string> out;
    (out.push_back(cell(cells)), ...);
    line(out);
  }
  std::string str() const { return text_; }

private:
  static std::string cell(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
  static std::string cell(bool b) { return b ? "1" : "0"; }
  static std::string cell(std::int64_t n) { return std::to_string(n); }
  static std::string cell(std::size_t n) { return std::to_string(n); }
  static std::string cell(int n) { return std::to_string(n); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }

  void line(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
    text_ += "\n";
  }

  std::size_t width_;
  std::string text_;
};

using Estimator = std::function<void(const ExperimentConfig&, const System&, int, RunReport&)>;

struct EstimatorInfo {
  std::set<std::string> params;
  bool ifs_only = false;
  bool sde_only = false;
  Estimator run;
};

std::vector<Arc> default_test_arcs() {
  return {Arc{CirclePoint(0.0), CirclePoint(0.2)}, Arc{CirclePoint(0.3), CirclePoint(0.7)},
          Arc{CirclePoint(0.5), CirclePoint(0.6)}, Arc{CirclePoint(0.1), CirclePoint(0.9)},
          Arc{CirclePoint(0.8), CirclePoint(0.35)}};
}

double fraction_of(std::size_t k, std::size_t n) { return n ? static_cast<double>(k) / static_cast<double>(n) : 0.0; }

Arc single_arc(const ExperimentConfig& c, const std::string& key, const std::string& fallback) {
  const auto arcs = c.arcs(key, fallback);
  if (arcs.size() != 1) c.fail(key, "expected exactly one arc");
  const double l = arcs[0].length();
  if (!(l > 0.0 && l < 1.0)) c.fail(key, "arc length must lie in (0, 1)");
  return arcs[0];
}

OccupationParams occupation_params(const ExperimentConfig& c) {
  OccupationParams p;
  p.burn_in = c.integer("burn_in", 500);
  p.samples = c.integer("samples", 20);
  p.realizations = c.realizations;
  const auto bins = c.integer("bins", 64);
  if (bins < 1) c.fail("bins", "must be positive");
  if (p.burn_in < 0) c.fail("burn_in", "must be non-negative");
  if (p.samples < 1) c.fail("samples", "must be positive");
  p.bins = static_cast<std::size_t>(bins);
  if (c.has("start")) p.start = c.point("start", 0.0);
  return p;
}

Json histogram_json(const EmpiricalMeasure& m, std::size_t bins) {
  return {{"bins", bins},
          {"max_bin_mass", m.max_bin_mass(bins)},
          {"ks_to_uniform", ks_to_uniform(m)},
          {"spread", spread(m)},
          {"masses", m.bin_masses(bins)}};
}

std::string histogram_csv(const EmpiricalMeasure& m, std::size_t bins) {
  Csv csv({"index", "bin_start", "mass"});
  const auto masses = m.bin_masses(bins);
  for (std::size_t i = 0; i < bins; ++i)
    csv.row(i, static_cast<double>(i) / static_cast<double>(bins), masses[i]);
  return csv.str();
}

void run_sync(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  const CirclePoint x = c.point("x", 0.1);
  const CirclePoint y = c.point("y", 0.6);
  if (x == y) c.fail("y", "x and y must differ");
  const double pass = c.number("pass_fraction", 0.95);
  const auto v = sync_test(s, c.seed, x, y, c.realizations, c.horizon, c.number("tol", defaults::sync_tol), workers);
  rep.result = v.to_json();
  rep.result["pass_fraction"] = pass;
  if (v.fraction >= pass) {
    rep.verdict = "synchronising";
  } else if (v.fraction == 0.0) {
    rep.verdict = "not-synchronising";
  } else {
    rep.verdict = "inconclusive";
    rep.status = RunStatus::inconclusive;
  }
  Csv csv({"step", "median_distance", "fraction_below_tol"});
  for (std::size_t k = 0; k < v.median_curve.size(); ++k) csv.row(k, v.median_curve[k], v.fraction_curve[k]);
  rep.csv = csv.str();
}

void run_local_stability(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  const auto radii = c.numbers("radii", {0.01, 0.05, 0.1});
  for (double r : radii)
    if (!(r > 0.0 && r < 0.5)) c.fail("radii", "radii must lie in (0, 1/2)");
  const auto ls = local_stability_test(s, c.seed, c.point("x", 0.0), c.realizations, c.horizon, radii,
                                       c.number("tol", defaults::contract_tol), workers);
  rep.result = ls.to_json();
  rep.verdict = "reported";
  Csv csv({"index", "radius", "fraction"});
  for (std::size_t i = 0; i < radii.size(); ++i) csv.row(i, radii[i], ls.fractions[i]);
  rep.csv = csv.str();
}

void run_compressibility(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  const auto arcs = c.arcs("arcs", "0:0.2, 0.3:0.7, 0.5:0.6, 0.1:0.9, 0.8:0.35");
  for (const auto& a : arcs)
    if (!(a.length() > 0.0)) c.fail("arcs", "degenerate arc");
  const auto comp = compressibility_test(s, c.seed, arcs, c.realizations, c.horizon, workers);
  rep.result = comp.to_json();
  rep.verdict = comp.all_found() ? "compressible" : (comp.found_count() == 0 ? "no-witness" : "partial");
  Csv csv({"index", "arc_start", "arc_end", "found", "time", "realization", "image_length"});
  for (std::size_t i = 0; i < comp.witnesses.size(); ++i) {
    const auto& w = comp.witnesses[i];
    csv.row(i, w.arc.start.value(), w.arc.end.value(), w.found, w.time, w.realization, w.length);
  }
  rep.csv = csv.str();
}

std::string stability_name(Stability s) {
  switch (s) {
    case Stability::attracting:
      return "attracting";
    case Stability::repelling:
      return "repelling";
    default:
      return "neutral";
  }
}

void run_fixed_points(const ExperimentConfig&, const System& s, int, RunReport& rep) {
  const auto fixed = deterministic_fixed_points(s.ifs());
  rep.verdict = fixed.all_points ? "all-points" : (fixed.points.empty() ? "none" : "found");
  Json points = Json::array();
  Csv csv({"index", "point", "stability", "derivative"});
  for (std::size_t i = 0; i < fixed.points.size(); ++i) {
    const auto& p = fixed.points[i];
    points.push_back(p.point.value());
    csv.row(i, p.point.value(), stability_name(p.stability), p.derivative);
  }
  rep.result = {{"all_points", fixed.all_points}, {"points", points}};
  rep.csv = csv.str();
}

void run_minimality(const ExperimentConfig& c, const System& s, int, RunReport& rep) {
  const std::string dir = c.text("direction", "reverse");
  if (dir != "forward" && dir != "reverse") c.fail("direction", "expected forward or reverse");
  const auto grid = c.integer("grid", 256);
  const auto bound = c.integer("word_bound", 4096);
  if (grid < 64) c.fail("grid", "must be at least 64");
  if (bound < 1) c.fail("word_bound", "must be positive");
  const auto m = minimality_check(s.ifs(), dir == "forward" ? Direction::forward : Direction::reverse,
                                  static_cast<std::size_t>(grid), static_cast<std::size_t>(bound));
  rep.result = m.to_json();
  rep.verdict = m.minimal ? "minimal-evidence" : "not-minimal";
  Csv csv({"index", "cell", "cell_start"});
  for (std::size_t i = 0; i < m.obstruction.size(); ++i)
    csv.row(i, m.obstruction[i], static_cast<double>(m.obstruction[i]) / static_cast<double>(m.grid));
  rep.csv = csv.str();
}

void run_crack_law(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  const auto bins = c.integer("bins", 64);
  if (bins < 1) c.fail("bins", "must be positive");
  const double tol = c.number("contract_tol", defaults::contract_tol);
  const auto law = crack_law(s, c.seed, c.realizations, c.horizon, static_cast<std::size_t>(bins), tol, workers);
  rep.result = law.to_json();
  if (law.law) rep.result["histogram"] = law.law->bin_masses(static_cast<std::size_t>(bins));
  const auto shift = c.integer("equivariance_shift", 0);
  if (shift > 0) {
    const auto n = static_cast<std::size_t>(c.integer("equivariance_realizations", 50));
    rep.result["equivariance"] =
        crack_equivariance(s, derive_seed(c.seed, 1), n, shift, c.horizon, tol, workers).to_json();
  }
  if (law.present == 0) {
    rep.verdict = "no-crack-point";
  } else {
    rep.verdict = law.atomless ? "atomless" : "atom";
  }
  if (fraction_of(law.inconclusive, law.realizations) > 0.01) rep.status = RunStatus::inconclusive;
  Csv csv({"index", "present", "inconclusive", "location", "bracket_width", "base_residual"});
  for (std::size_t i = 0; i < law.estimates.size(); ++i) {
    const auto& e = law.estimates[i];
    csv.row(i, e.present, e.inconclusive, e.location.value(), e.bracket_width, law.base_residuals[i]);
  }
  rep.csv = csv.str();
}

void run_occupation(const ExperimentConfig& c, const System& s, int workers, RunReport& rep, bool reverse) {
  const auto p = occupation_params(c);
  const auto m = reverse ? reverse_stationary_measure(s, c.seed, p, workers) : stationary_measure(s, c.seed, p, workers);
  rep.result = histogram_json(m, p.bins);
  rep.verdict = "estimated";
  rep.csv = histogram_csv(m, p.bins);
}

void run_martingale(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  const Arc arc = single_arc(c, "arc", "0:0.5");
  const auto p = occupation_params(c);
  const auto rho = reverse_stationary_measure(s, c.seed, p, workers);
  const auto st = c.integer("s", 20);
  const auto t = c.integer("t", 20);
  const auto m = c.integer("continuations", 2000);
  const auto k = c.integer("prefixes", 10);
  if (st < 0 || t < 0) c.fail("s", "step counts must be non-negative");
  if (m < 1 || k < 1) c.fail("continuations", "continuations and prefixes must be positive");
  const auto mc = martingale_check(s, rho, arc, st, t, static_cast<std::size_t>(m), static_cast<std::size_t>(k),
                                   derive_seed(c.seed, 2), workers);
  rep.result = mc.to_json();
  const double allowance = mc.bound + 2.0 / static_cast<double>(p.bins);
  rep.result["allowance"] = allowance;
  rep.verdict = mc.deviation < allowance ? "consistent" : "deviates";
  Csv csv({"index", "h_s", "mean_h_s_plus_t", "difference"});
  for (std::size_t i = 0; i < mc.h_s.size(); ++i) csv.row(i, mc.h_s[i], mc.mean_h_st[i], mc.mean_h_st[i] - mc.h_s[i]);
  rep.csv = csv.str();
}

void run_contraction_odds(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  const Arc arc = single_arc(c, "arc", "0:0.5");
  const auto rho = reverse_stationary_measure(s, c.seed, occupation_params(c), workers);
  const auto check = contraction_check(s, rho, arc, c.realizations, c.horizon, c.number("tol", defaults::contract_tol),
                                   derive_seed(c.seed, 2), workers);
  rep.result = check.to_json();
  rep.verdict = std::abs(check.empirical - check.predicted) < 0.05 ? "consistent" : "deviates";
  if (check.undecided > 0.05) {
    rep.status = RunStatus::inconclusive;
    rep.verdict = "horizon-too-short";
  }
  Csv csv({"index", "image_length"});
  for (std::size_t i = 0; i < check.lengths.size(); ++i) csv.row(i, check.lengths[i]);
  rep.csv = csv.str();
}

void run_birkhoff(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  const Arc arc = single_arc(c, "arc", "0:0.25");
  if (c.horizon < 1) c.fail("horizon", "must be positive");
  if (s.is_ifs()) {
    for (const auto& p : deterministic_fixed_points(s.ifs()).points) {
      if (p.point == arc.start || p.point == arc.end) {
        rep.status = RunStatus::inconclusive;
        rep.verdict = "fixed-point-on-boundary";
      }
    }
  }
  const auto rho = stationary_measure(s, derive_seed(c.seed, 1), occupation_params(c), workers);
  const double target = rho.mass(arc);
  const NoiseKey key = realization_key(c.seed, 0);
  std::array<CirclePoint, 2> p{c.point("x1", 0.1), c.point("x2", 0.7)};
  std::array<std::int64_t, 2> inside{0, 0};
  const std::int64_t every = std::max<std::int64_t>(1, c.horizon / 100);
  Csv csv({"step", "average_x1", "average_x2"});
  for (std::int64_t k = 0; k < c.horizon; ++k) {
    for (std::size_t i = 0; i < 2; ++i)
      if (arc.contains(p[i])) ++inside[i];
    s.advance(key, k, 1, p);
    if ((k + 1) % every == 0 || k + 1 == c.horizon) {
      const double n = static_cast<double>(k + 1);
      csv.row(k + 1, static_cast<double>(inside[0]) / n, static_cast<double>(inside[1]) / n);
    }
  }
  const double a1 = static_cast<double>(inside[0]) / static_cast<double>(c.horizon);
  const double a2 = static_cast<double>(inside[1]) / static_cast<double>(c.horizon);
  const double worst = std::max({std::abs(a1 - a2), std::abs(a1 - target), std::abs(a2 - target)});
  rep.result = {{"horizon", c.horizon}, {"average_x1", a1},  {"average_x2", a2},
                {"stationary_mass", target}, {"max_difference", worst}};
  if (rep.verdict.empty()) rep.verdict = worst < 0.02 ? "consistent" : "deviates";
  rep.csv = csv.str();
}

void run_spread_decay(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  const auto cloud = c.integer("cloud", 1024);
  if (cloud < 2) c.fail("cloud", "must be at least 2");
  const auto sd = spread_decay(s, c.seed, static_cast<std::size_t>(cloud), c.realizations, c.horizon, workers);
  rep.result = sd.to_json();
  rep.verdict = !sd.median.empty() && sd.median.back() < 1e-3 ? "collapsed" : "spread";
  Csv csv({"step", "median_spread"});
  for (std::size_t i = 0; i < sd.steps.size(); ++i) csv.row(sd.steps[i], sd.median[i]);
  rep.csv = csv.str();
}

void run_pair(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  std::vector<std::int64_t> depths;
  for (double d : c.numbers("depths", {250, 500, 1000, 2000})) {
    if (d < 0 || d != std::floor(d)) c.fail("depths", "depths must be non-negative integers");
    depths.push_back(static_cast<std::int64_t>(d));
  }
  if (!std::is_sorted(depths.begin(), depths.end())) c.fail("depths", "depths must be increasing");
  const CirclePoint a = c.point("anchor", 0.25);
  const CirclePoint b = c.point("anchor_alt", 0.75);
  if (a == b) c.fail("anchor_alt", "anchors must differ");
  const auto pe = attractor_repeller(s, c.seed, c.realizations, depths, a, b, c.horizon,
                                     c.number("tol", defaults::anchor_tol), workers);
  rep.result = pe.to_json();
  const double frac = fraction_of(pe.converged, pe.rows.size());
  if (pe.converged == 0) {
    rep.status = RunStatus::inconclusive;
    rep.verdict = "no-convergence";
  } else {
    rep.verdict = frac >= 0.95 && pe.min_separation > 1e-3 ? "attractor-repeller-pair" : "partial";
  }
  Csv csv({"index", "attractor", "attractor_alt", "residual", "converged", "repeller_present", "repeller",
           "separation", "equivariance"});
  for (std::size_t i = 0; i < pe.rows.size(); ++i) {
    const auto& r = pe.rows[i];
    const bool located = r.repeller.present && !r.repeller.inconclusive;
    csv.row(i, r.attractor.value(), r.attractor_alt.value(), r.residual, r.converged, located,
            r.repeller.location.value(), r.separation, r.equivariance);
  }
  rep.csv = csv.str();
}

void run_lyapunov(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  if (c.horizon < 1) c.fail("horizon", "must be positive");
  const auto ly = lyapunov_over(s, c.seed, c.point("x", 0.25), c.realizations, c.horizon, workers);
  rep.result = ly.to_json();
  if (ly.mean + 3.0 * ly.stderr_ < 0.0) {
    rep.verdict = "negative";
  } else if (ly.mean - 3.0 * ly.stderr_ > 0.0) {
    rep.verdict = "positive";
  } else {
    rep.verdict = "not-separated-from-zero";
  }
  Csv csv({"index", "exponent"});
  for (std::size_t i = 0; i < ly.exponents.size(); ++i) csv.row(i, ly.exponents[i]);
  rep.csv = csv.str();
}

void run_witness(const ExperimentConfig& c, const System& s, int, RunReport& rep) {
  const Arc arc = single_arc(c, "arc", "0.1:0.4");
  const double eta = c.number("eta", 100.0);
  Csv csv({"index", "anchor", "drift_gap", "ramp_end", "contraction_time", "achieved_length", "initial_rate"});
  try {
    const auto w = witness_path(s.sde(), arc, eta);
    rep.result = {{"arc", {arc.start.value(), arc.end.value()}},
                  {"eta", eta},
                  {"anchor", w.anchor},
                  {"drift_gap", w.drift_gap},
                  {"ramp_end", w.path.ramp_end},
                  {"contraction_time", w.contraction_time},
                  {"achieved_length", w.achieved_length},
                  {"initial_length", arc.length()},
                  {"initial_rate", w.initial_rate}};
    rep.verdict = "contracted";
    csv.row(0, w.anchor, w.drift_gap, w.path.ramp_end, w.contraction_time, w.achieved_length, w.initial_rate);
  } catch (const PreconditionError& e) {
    rep.status = RunStatus::inconclusive;
    rep.verdict = "precondition-failed";
    rep.result = {{"error", e.what()}};
  } catch (const NoContraction& e) {
    rep.status = RunStatus::inconclusive;
    rep.verdict = "no-contraction";
    rep.result = {{"error", e.what()}};
  }
  rep.csv = csv.str();
}

void run_arc_invariance(const ExperimentConfig& c, const System& s, int workers, RunReport& rep) {
  const Arc u = single_arc(c, "arc_u", "0.25:0.75");
  const double tol = c.number("tol", defaults::sync_tol);
  Csv csv({"index", "image_start", "image_end", "maps_into_u", "simple", "attractor_in_u"});
  bool invariant = true;
  bool attractor_inside = false;
  Json maps = Json::array();
  for (std::size_t i = 0; i < s.ifs().size(); ++i) {
    const Homeo& g = s.ifs().generator(i);
    const CirclePoint a = g.apply(u.start);
    const CirclePoint b = g.apply(u.end);
    const bool inside = u.contains(a) && u.contains(b) && d_plus(u.start, a) <= d_plus(u.start, b);
    invariant = invariant && inside;
    const auto cls = classify_simple(g);
    const bool attractor_in_u = cls.is_simple() && u.contains(*cls.attractor);
    attractor_inside = attractor_inside || attractor_in_u;
    maps.push_back({{"generator", g.to_string()}, {"maps_into_u", inside}, {"simple", cls.is_simple()}});
    csv.row(i, a.value(), b.value(), inside, cls.is_simple(), attractor_in_u);
  }
  const auto in_u = sync_test(s, c.seed, c.point("u_x", 0.3), c.point("u_y", 0.7), c.realizations, c.horizon, tol,
                              workers);
  const auto global = sync_test(s, derive_seed(c.seed, 1), c.point("x", 0.8), c.point("y", 0.05), c.realizations,
                                c.horizon, tol, workers);
  rep.result = {{"u", {u.start.value(), u.end.value()}},
                {"forward_invariant", invariant},
                {"simple_attractor_in_u", attractor_inside},
                {"generators", maps},
                {"sync_in_u", in_u.to_json()},
                {"sync_global", global.to_json()}};
  if (!invariant) {
    rep.status = RunStatus::inconclusive;
    rep.verdict = "u-not-invariant";
  } else {
    rep.verdict = in_u.fraction >= 0.95 && global.fraction >= 0.95 ? "synchronising" : "not-synchronising";
  }
  rep.csv = csv.str();
}

const std::set<std::string> kOccupation = {"burn_in", "samples", "bins", "start"};

std::set<std::string> with_occupation(std::set<std::string> keys) {
  keys.insert(kOccupation.begin(), kOccupation.end());
  return keys;
}

const std::map<std::string, EstimatorInfo>& registry() {
  static const std::map<std::string, EstimatorInfo> all = {
      {"sync", {{"x", "y", "tol", "pass_fraction"}, false, false, run_sync}},
      {"local-stability", {{"x", "radii", "tol"}, false, false, run_local_stability}},
      {"compressibility", {{"arcs"}, false, false, run_compressibility}},
      {"fixed-points", {{}, true, false, run_fixed_points}},
      {"minimality", {{"direction", "grid", "word_bound"}, true, false, run_minimality}},
      {"crack-law",
       {{"bins", "contract_tol", "equivariance_shift", "equivariance_realizations"}, false, false, run_crack_law}},
      {"stationary",
       {kOccupation, false, false,
        [](const ExperimentConfig& c, const System& s, int w, RunReport& r) { run_occupation(c, s, w, r, false); }}},
      {"reverse-stationary",
       {kOccupation, true, false,
        [](const ExperimentConfig& c, const System& s, int w, RunReport& r) { run_occupation(c, s, w, r, true); }}},
      {"martingale",
       {with_occupation({"arc", "s", "t", "continuations", "prefixes"}), true, false, run_martingale}},
      {"contraction-odds", {with_occupation({"arc", "tol"}), true, false, run_contraction_odds}},
      {"birkhoff", {with_occupation({"x1", "x2", "arc"}), false, false, run_birkhoff}},
      {"spread-decay", {{"cloud"}, false, false, run_spread_decay}},
      {"pair", {{"depths", "anchor", "anchor_alt", "tol"}, false, false, run_pair}},
      {"lyapunov", {{"x"}, true, false, run_lyapunov}},
      {"witness", {{"arc", "eta"}, false, true, run_witness}},
      {"arc-invariance", {{"arc_u", "u_x", "u_y", "x", "y", "tol"}, true, false, run_arc_invariance}},
  };
  return all;
}

const std::set<std::string> kIfsRequirements = {"no-deterministic-fixed-points", "compressible", "reverse-minimal",
                                                "simple-generator"};

PreconditionOutcome check_requirement(const std::string& name, const ExperimentConfig& c, const System& s,
                                      int workers) {
  PreconditionOutcome out;
  out.name = name;
  if (name == "no-deterministic-fixed-points") {
    const auto fixed = deterministic_fixed_points(s.ifs());
    out.passed = fixed.empty();
    out.detail = {{"count", fixed.points.size()}, {"all_points", fixed.all_points}};
  } else if (name == "compressible") {
    const auto comp = compressibility_test(s, derive_seed(c.seed, 101), default_test_arcs(), 100, 100, workers);
    out.passed = comp.all_found();
    out.detail = comp.to_json();
  } else if (name == "reverse-minimal") {
    const auto m = minimality_check(s.ifs(), Direction::reverse, 256, 4096);
    out.passed = m.minimal;
    out.detail = m.to_json();
  } else if (name == "simple-generator") {
    Json list = Json::array();
    for (const auto& g : s.ifs().generators()) {
      const auto cls = classify_simple(g);
      out.passed = out.passed || cls.is_simple();
      if (cls.is_simple())
        list.push_back({{"generator", g.to_string()},
                        {"repeller", cls.repeller->value()},
                        {"attractor", cls.attractor->value()}});
    }
    out.detail = {{"simple", list}};
  } else if (name == "least-period-one") {
    const int n = least_period_divisor(s.sde().drift());
    out.passed = n == 1;
    out.detail = {{"least_period_divisor", n}};
  }
  return out;
}

}  // namespace

const std::vector<std::string>& estimator_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

void validate(const ExperimentConfig& c) {
  const auto it = registry().find(c.estimator);
  if (it == registry().end()) c.fail("estimator", "unknown estimator '" + c.estimator + "'");
  const EstimatorInfo& info = it->second;
  const bool ifs = c.system == "ifs";
  if (info.ifs_only && !ifs) c.fail("estimator", c.estimator + " needs an ifs system");
  if (info.sde_only && ifs) c.fail("estimator", c.estimator + " needs an sde system");
  for (const auto& [key, _] : c.params)
    if (!info.params.count(key)) c.fail(key, "unknown parameter for estimator " + c.estimator);
  for (const auto& r : c.require) {
    if (kIfsRequirements.count(r)) {
      if (!ifs) c.fail("require", r + " needs an ifs system");
    } else if (r == "least-period-one") {
      if (ifs) c.fail("require", r + " needs an sde system");
    } else {
      c.fail("require", "unknown requirement '" + r + "'");
    }
  }
  if (c.realizations == 0 && c.estimator != "fixed-points" && c.estimator != "minimality" && c.estimator != "witness")
    c.fail("realizations", "must be positive");
}

RunReport run_experiment(const ExperimentConfig& config, int workers) {
  validate(config);
  const System system = config.build_system();
  RunReport rep;
  for (const auto& r : config.require) {
    rep.preconditions.push_back(check_requirement(r, config, system, workers));
    if (!rep.preconditions.back().passed) {
      rep.status = RunStatus::inconclusive;
      rep.verdict = "precondition-failed: " + r;
      rep.csv = "index\n";
      return rep;
    }
  }
  registry().at(config.estimator).run(config, system, workers, rep);
  return rep;
}

Json RunReport::summary() const {
  Json pre = Json::array();
  for (const auto& p : preconditions) pre.push_back({{"name", p.name}, {"passed", p.passed}, {"detail", p.detail}});
  return {{"status", status == RunStatus::ok ? "ok" : "inconclusive"},
          {"verdict", verdict},
          {"preconditions", pre},
          {"result", result}};
}

std::string summary_text(const ExperimentConfig& config, const RunReport& report) {
  Json doc = {{"name", config.name}, {"estimator", config.estimator}, {"seed", config.seed},
              {"config", config.to_text()}};
  const Json outcome = report.summary();
  for (const auto& [k, v] : outcome.items()) doc[k] = v;
  return doc.dump(2) + "\n";
}

}  // namespace crds

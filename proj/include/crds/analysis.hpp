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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crds/circle.hpp"
#include "crds/homeo.hpp"
#include "crds/measure.hpp"
#include "crds/rds.hpp"
#include "crds/system.hpp"
#include "json.hpp"

namespace crds {

using Json = nlohmann::ordered_json;

namespace defaults {
inline constexpr double contract_tol = 1e-4;
inline constexpr double sync_tol = 1e-6;
inline constexpr double anchor_tol = 1e-8;
inline constexpr std::int64_t sync_horizon = 500;
inline constexpr std::int64_t crack_horizon = 2000;
}  // namespace defaults

/// Noise of realization i in a Monte Carlo run with the given seed.
inline NoiseKey realization_key(std::uint64_t seed, std::size_t i) { return {seed, i, 0}; }

// ---------------------------------------------------------------- arcs

/// Index pair (i, j): the arc from points[i] anticlockwise to points[j].
using ArcIndex = std::pair<std::size_t, std::size_t>;
using ArcVisitor = std::function<bool(std::int64_t step, const std::vector<ArcImage>& arcs)>;

/// Evolves the points for `steps` unit steps and tracks the arc images step
/// by step. The visitor, if any, sees every step k >= 1 and may stop early
/// by returning false.
std::vector<ArcImage> evolve_arcs(const System& system, const NoiseKey& key, std::vector<CirclePoint> points,
                                  const std::vector<ArcIndex>& arcs, std::int64_t steps,
                                  const ArcVisitor& visit = {});

/// l(phi(T, omega) J), with 1 for an image that wrapped onto the whole circle.
double image_length(const System& system, const NoiseKey& key, const Arc& arc, std::int64_t steps);

// ---------------------------------------------------------------- synchronisation

struct SyncVerdict {
  CirclePoint x;
  CirclePoint y;
  std::size_t realizations = 0;
  std::int64_t horizon = 0;
  double tol = 0.0;
  std::vector<double> final_distances;
  double fraction = 0.0;
  std::vector<double> median_curve;    // entry k: median of d(phi(k) x, phi(k) y)
  std::vector<double> fraction_curve;  // entry k: fraction below tol
  bool distances_constant = false;     // d stayed exactly at d(x, y) in every realization
  Json to_json() const;
};

SyncVerdict sync_test(const System& system, std::uint64_t seed, CirclePoint x, CirclePoint y, std::size_t realizations,
                      std::int64_t horizon, double tol = defaults::sync_tol, int workers = 1);

struct LocalStability {
  CirclePoint x;
  std::size_t realizations = 0;
  std::int64_t horizon = 0;
  double tol = 0.0;
  std::vector<double> radii;
  std::vector<double> fractions;  // l(phi(T) [x - r, x + r]) < tol
  Json to_json() const;
};

LocalStability local_stability_test(const System& system, std::uint64_t seed, CirclePoint x, std::size_t realizations,
                                    std::int64_t horizon, std::vector<double> radii,
                                    double tol = defaults::contract_tol, int workers = 1);

struct CompressionWitness {
  Arc arc;
  bool found = false;
  std::int64_t time = 0;       // first step with a shorter image
  std::size_t realization = 0; // stream of the witness
  double length = 0.0;         // image length at that step
};

struct Compressibility {
  std::uint64_t seed = 0;
  std::int64_t horizon = 0;
  std::size_t realizations = 0;
  std::vector<CompressionWitness> witnesses;
  std::size_t probes() const { return realizations * static_cast<std::size_t>(horizon); }
  bool all_found() const;
  std::size_t found_count() const;
  Json to_json() const;
};

Compressibility compressibility_test(const System& system, std::uint64_t seed, const std::vector<Arc>& arcs,
                                     std::size_t realizations, std::int64_t horizon, int workers = 1);

/// Fraction of the steps 0 .. T-1 with phi(k, omega) x in the closed arc J.
double birkhoff_average(const System& system, const NoiseKey& key, CirclePoint x, const Arc& arc, std::int64_t horizon);

/// (1/T) sum of log f_k'(x_{k-1}); IFS of differentiable maps (one-sided at PWL breakpoints).
double lyapunov_exponent(const System& system, const NoiseKey& key, CirclePoint x, std::int64_t horizon);

struct LyapunovSummary {
  std::vector<double> exponents;
  double mean = 0.0;
  double stderr_ = 0.0;
  Json to_json() const;
};

LyapunovSummary lyapunov_over(const System& system, std::uint64_t seed, CirclePoint x, std::size_t realizations,
                              std::int64_t horizon, int workers = 1);

// ---------------------------------------------------------------- structure of the IFS

/// Points fixed by every generator.
FixedPointSet deterministic_fixed_points(const IfsModel& model);

enum class Direction { forward, reverse };

struct Minimality {
  Direction direction = Direction::forward;
  std::size_t grid = 0;
  std::size_t word_bound = 0;
  bool minimal = false;
  std::size_t depth = 0;                  // longest BFS depth needed
  std::vector<std::size_t> obstruction;   // smallest reachable cell set when not minimal
  Json to_json() const;
};

/// Cell-level reachability: cell i reaches every cell that meets the image of
/// cell i under a generator (or an inverse for the reverse direction).
Minimality minimality_check(const IfsModel& model, Direction direction, std::size_t grid, std::size_t word_bound);

// ---------------------------------------------------------------- crack points

struct CrackEstimate {
  bool present = false;
  bool inconclusive = false;
  CirclePoint location;
  double bracket_width = 1.0;
  std::int64_t horizon = 0;
  std::string note;
};

/// Locates c(omega) = sup{v : l(phi(T) [k, k + v]) -> 0} by bisection.
CrackEstimate crack_point(const System& system, const NoiseKey& key, CirclePoint base, std::int64_t horizon,
                          double contract_tol = defaults::contract_tol);

struct CrackLaw {
  std::size_t realizations = 0;
  std::int64_t horizon = 0;
  std::size_t bins = 0;
  std::vector<CrackEstimate> estimates;
  std::vector<double> base_residuals;  // distance between the estimates from the two bases
  std::size_t present = 0;
  std::size_t inconclusive = 0;
  std::optional<EmpiricalMeasure> law;  // conclusive present estimates
  double max_bin_mass = 0.0;
  double null_bound = 0.0;  // 3 / bins
  bool atomless = false;
  Json to_json() const;
};

CrackLaw crack_law(const System& system, std::uint64_t seed, std::size_t realizations, std::int64_t horizon,
                   std::size_t bins, double contract_tol = defaults::contract_tol, int workers = 1);

struct CrackEquivariance {
  std::int64_t shift = 0;
  std::vector<double> residuals;  // d(crack(theta^t omega), phi(t, omega) crack(omega))
  std::vector<double> widths;
  std::size_t checked = 0;
  std::size_t within = 0;  // residual < width + 1e-6
  Json to_json() const;
};

CrackEquivariance crack_equivariance(const System& system, std::uint64_t seed, std::size_t realizations,
                                     std::int64_t shift, std::int64_t horizon,
                                     double contract_tol = defaults::contract_tol, int workers = 1);

// ---------------------------------------------------------------- measures

struct OccupationParams {
  std::int64_t burn_in = 500;
  std::int64_t samples = 20;
  std::size_t realizations = 100;
  std::size_t bins = 64;
  std::optional<CirclePoint> start;
};

EmpiricalMeasure stationary_measure(const System& system, std::uint64_t seed, const OccupationParams& params,
                                    int workers = 1);
/// Occupation measure of the inverse maps; IFS only.
EmpiricalMeasure reverse_stationary_measure(const System& system, std::uint64_t seed, const OccupationParams& params,
                                            int workers = 1);

struct MartingaleCheck {
  std::int64_t s = 0;
  std::int64_t t = 0;
  std::size_t continuations = 0;
  std::vector<double> h_s;
  std::vector<double> mean_h_st;
  double deviation = 0.0;
  double bound = 0.0;  // 3 / sqrt(M)
  Json to_json() const;
};

/// Compares h_s = rho(phi(s, omega) J) with the mean of h_{s+t} over fresh continuations.
MartingaleCheck martingale_check(const System& system, const EmpiricalMeasure& rho, const Arc& arc, std::int64_t s,
                                 std::int64_t t, std::size_t continuations, std::size_t prefixes, std::uint64_t seed,
                                 int workers = 1);

struct ContractionCheck {
  double empirical = 0.0;         // fraction with l(phi(T) J) < tol
  double predicted = 0.0;         // 1 - rho(J)
  double complement_predicted = 0.0;
  double undecided = 0.0;         // fraction with tol <= length <= 1 - tol
  std::size_t realizations = 0;
  std::int64_t horizon = 0;
  std::vector<double> lengths;
  Json to_json() const;
};

ContractionCheck contraction_check(const System& system, const EmpiricalMeasure& rho, const Arc& arc, std::size_t realizations,
                           std::int64_t horizon, double tol = defaults::contract_tol, std::uint64_t seed = 0,
                           int workers = 1);

// ---------------------------------------------------------------- attractor and repeller

struct PairRow {
  CirclePoint attractor;
  CirclePoint attractor_alt;  // from the second anchor
  double residual = 0.0;      // d(attractor, attractor_alt) at the deepest depth
  std::vector<double> depth_residuals;
  bool converged = false;
  CrackEstimate repeller;
  double separation = 0.0;    // d(a, r)
  double equivariance = 0.0;  // d(a(theta omega), f_1(a(omega)))
};

struct PairEstimate {
  std::vector<std::int64_t> depths;
  CirclePoint anchor;
  CirclePoint anchor_alt;
  double tol = 0.0;
  std::vector<PairRow> rows;
  std::size_t converged = 0;
  double min_separation = 1.0;
  double max_equivariance = 0.0;
  Json to_json() const;
};

PairEstimate attractor_repeller(const System& system, std::uint64_t seed, std::size_t realizations,
                                std::vector<std::int64_t> depths, CirclePoint anchor, CirclePoint anchor_alt,
                                std::int64_t crack_horizon = defaults::crack_horizon,
                                double tol = defaults::anchor_tol, int workers = 1);

struct SpreadDecay {
  std::size_t cloud = 0;
  std::size_t realizations = 0;
  std::int64_t horizon = 0;
  std::vector<std::int64_t> steps;
  std::vector<double> median;  // median spread of the image cloud at each recorded step
  std::vector<double> final_spreads;
  Json to_json() const;
};

/// Spread of phi(t, omega) applied to an evenly spaced cloud, recorded at powers of two and at T.
SpreadDecay spread_decay(const System& system, std::uint64_t seed, std::size_t cloud, std::size_t realizations,
                         std::int64_t horizon, int workers = 1);

// ---------------------------------------------------------------- helpers

double median(std::vector<double> values);

}  // namespace crds

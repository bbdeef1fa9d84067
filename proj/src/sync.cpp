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

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "crds/analysis.hpp"
#include "crds/parallel.hpp"

namespace crds {

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

std::vector<ArcImage> evolve_arcs(const System& system, const NoiseKey& key, std::vector<CirclePoint> points,
                                  const std::vector<ArcIndex>& arcs, std::int64_t steps, const ArcVisitor& visit) {
  std::vector<ArcImage> images;
  images.reserve(arcs.size());
  for (const auto& [i, j] : arcs) images.emplace_back(Arc{points.at(i), points.at(j)});
  for (std::int64_t k = 1; k <= steps; ++k) {
    system.advance(key, k - 1, 1, points);
    for (std::size_t a = 0; a < arcs.size(); ++a) images[a].update(points[arcs[a].first], points[arcs[a].second]);
    if (visit && !visit(k, images)) break;
  }
  return images;
}

double image_length(const System& system, const NoiseKey& key, const Arc& arc, std::int64_t steps) {
  return evolve_arcs(system, key, {arc.start, arc.end}, {{0, 1}}, steps).front().length();
}

SyncVerdict sync_test(const System& system, std::uint64_t seed, CirclePoint x, CirclePoint y, std::size_t realizations,
                      std::int64_t horizon, double tol, int workers) {
  if (x == y) throw std::invalid_argument("sync_test: x and y must differ");
  if (horizon < 0) throw std::invalid_argument("sync_test: negative horizon");
  const auto rows = static_cast<std::size_t>(horizon) + 1;
  std::vector<std::vector<double>> curves(realizations);
  parallel_for(realizations, workers, [&](std::size_t r) {
    auto& d = curves[r];
    d.resize(rows);
    std::array<CirclePoint, 2> p{x, y};
    d[0] = distance(x, y);
    const NoiseKey key = realization_key(seed, r);
    for (std::int64_t k = 1; k <= horizon; ++k) {
      system.advance(key, k - 1, 1, p);
      d[static_cast<std::size_t>(k)] = distance(p[0], p[1]);
    }
  });

  SyncVerdict v;
  v.x = x;
  v.y = y;
  v.realizations = realizations;
  v.horizon = horizon;
  v.tol = tol;
  v.distances_constant = true;
  std::size_t below = 0;
  for (const auto& d : curves) {
    v.final_distances.push_back(d.back());
    if (d.back() < tol) ++below;
    if (std::any_of(d.begin(), d.end(), [&](double e) { return e != d.front(); })) v.distances_constant = false;
  }
  v.fraction = realizations ? static_cast<double>(below) / static_cast<double>(realizations) : 0.0;
  std::vector<double> column(realizations);
  for (std::size_t k = 0; k < rows; ++k) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < realizations; ++r) {
      column[r] = curves[r][k];
      if (column[r] < tol) ++hits;
    }
    v.median_curve.push_back(median(column));
    v.fraction_curve.push_back(realizations ? static_cast<double>(hits) / static_cast<double>(realizations) : 0.0);
  }
  return v;
}

Json SyncVerdict::to_json() const {
  return {{"x", x.value()},
          {"y", y.value()},
          {"realizations", realizations},
          {"horizon", horizon},
          {"tol", tol},
          {"sync_fraction", fraction},
          {"final_median_distance", median_curve.empty() ? 0.0 : median_curve.back()},
          {"distances_constant", distances_constant}};
}

LocalStability local_stability_test(const System& system, std::uint64_t seed, CirclePoint x, std::size_t realizations,
                                    std::int64_t horizon, std::vector<double> radii, double tol, int workers) {
  std::vector<CirclePoint> points;
  std::vector<ArcIndex> arcs;
  for (double r : radii) {
    if (!(r > 0.0 && r < 0.5)) throw std::invalid_argument("local_stability_test: radii must lie in (0, 1/2)");
    arcs.emplace_back(points.size(), points.size() + 1);
    points.push_back(x.rotated(-r));
    points.push_back(x.rotated(r));
  }
  std::vector<std::vector<char>> hit(realizations);
  parallel_for(realizations, workers, [&](std::size_t n) {
    const auto images = evolve_arcs(system, realization_key(seed, n), points, arcs, horizon);
    for (const auto& im : images) hit[n].push_back(im.length() < tol ? 1 : 0);
  });
  LocalStability out;
  out.x = x;
  out.realizations = realizations;
  out.horizon = horizon;
  out.tol = tol;
  out.radii = std::move(radii);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    std::size_t count = 0;
    for (const auto& h : hit) count += static_cast<std::size_t>(h[a]);
    out.fractions.push_back(realizations ? static_cast<double>(count) / static_cast<double>(realizations) : 0.0);
  }
  return out;
}

Json LocalStability::to_json() const {
  return {{"x", x.value()}, {"realizations", realizations}, {"horizon", horizon},
          {"tol", tol},     {"radii", radii},               {"fractions", fractions}};
}

Compressibility compressibility_test(const System& system, std::uint64_t seed, const std::vector<Arc>& arcs,
                                     std::size_t realizations, std::int64_t horizon, int workers) {
  std::vector<CirclePoint> points;
  std::vector<ArcIndex> index;
  for (const Arc& a : arcs) {
    const double l = a.length();
    if (!(l > 0.0 && l < 1.0)) throw std::invalid_argument("compressibility_test: arc lengths must lie in (0, 1)");
    index.emplace_back(points.size(), points.size() + 1);
    points.push_back(a.start);
    points.push_back(a.end);
  }
  // first[r][a]: first step with a shorter image, 0 if none.
  std::vector<std::vector<std::pair<std::int64_t, double>>> first(realizations);
  parallel_for(realizations, workers, [&](std::size_t r) {
    auto& mine = first[r];
    mine.assign(arcs.size(), {0, 0.0});
    std::size_t open = arcs.size();
    evolve_arcs(system, realization_key(seed, r), points, index, horizon,
                [&](std::int64_t k, const std::vector<ArcImage>& images) {
                  for (std::size_t a = 0; a < arcs.size(); ++a) {
                    if (mine[a].first == 0 && images[a].length() < arcs[a].length()) {
                      mine[a] = {k, images[a].length()};
                      --open;
                    }
                  }
                  return open > 0;
                });
  });
  Compressibility out;
  out.seed = seed;
  out.horizon = horizon;
  out.realizations = realizations;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    CompressionWitness w;
    w.arc = arcs[a];
    for (std::size_t r = 0; r < realizations; ++r) {
      if (first[r][a].first > 0) {
        w.found = true;
        w.realization = r;
        w.time = first[r][a].first;
        w.length = first[r][a].second;
        break;
      }
    }
    out.witnesses.push_back(w);
  }
  return out;
}

bool Compressibility::all_found() const {
  return std::all_of(witnesses.begin(), witnesses.end(), [](const CompressionWitness& w) { return w.found; });
}

std::size_t Compressibility::found_count() const {
  return static_cast<std::size_t>(
      std::count_if(witnesses.begin(), witnesses.end(), [](const CompressionWitness& w) { return w.found; }));
}

Json Compressibility::to_json() const {
  Json list = Json::array();
  for (const auto& w : witnesses) {
    list.push_back({{"arc", {w.arc.start.value(), w.arc.end.value()}},
                    {"found", w.found},
                    {"time", w.time},
                    {"realization", w.realization},
                    {"image_length", w.length}});
  }
  return {{"seed", seed}, {"realizations", realizations}, {"horizon", horizon}, {"probes", probes()},
          {"witnesses", list}};
}

double birkhoff_average(const System& system, const NoiseKey& key, CirclePoint x, const Arc& arc,
                        std::int64_t horizon) {
  if (horizon <= 0) throw std::invalid_argument("birkhoff_average: horizon must be positive");
  std::array<CirclePoint, 1> p{x};
  std::int64_t inside = 0;
  for (std::int64_t k = 0; k < horizon; ++k) {
    if (arc.contains(p[0])) ++inside;
    system.advance(key, k, 1, p);
  }
  return static_cast<double>(inside) / static_cast<double>(horizon);
}

double lyapunov_exponent(const System& system, const NoiseKey& key, CirclePoint x, std::int64_t horizon) {
  if (!system.is_ifs()) throw Unsupported("Lyapunov exponents are not available for the SDE system");
  if (horizon <= 0) throw std::invalid_argument("lyapunov_exponent: horizon must be positive");
  std::array<CirclePoint, 1> p{x};
  double acc = 0.0;
  for (std::int64_t k = 1; k <= horizon; ++k) {
    acc += system.log_derivative(key, k, p[0]);
    system.advance(key, k - 1, 1, p);
  }
  return acc / static_cast<double>(horizon);
}

LyapunovSummary lyapunov_over(const System& system, std::uint64_t seed, CirclePoint x, std::size_t realizations,
                              std::int64_t horizon, int workers) {
  LyapunovSummary s;
  s.exponents.resize(realizations);
  parallel_for(realizations, workers, [&](std::size_t r) {
    s.exponents[r] = lyapunov_exponent(system, realization_key(seed, r), x, horizon);
  });
  double sum = 0.0;
  for (double e : s.exponents) sum += e;
  const double n = static_cast<double>(realizations);
  s.mean = realizations ? sum / n : 0.0;
  double var = 0.0;
  for (double e : s.exponents) var += (e - s.mean) * (e - s.mean);
  s.stderr_ = realizations > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
  return s;
}

Json LyapunovSummary::to_json() const {
  return {{"realizations", exponents.size()}, {"mean", mean}, {"stderr", stderr_}};
}

}  // namespace crds

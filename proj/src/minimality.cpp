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
#include <deque>
#include <stdexcept>

#include "crds/analysis.hpp"

namespace crds {

namespace {

CirclePoint cell_start(std::size_t c, std::size_t grid) {
  return CirclePoint(static_cast<double>(c % grid) / static_cast<double>(grid));
}

// Cells meeting the arc from s anticlockwise to e in a set of positive length.
std::vector<std::size_t> covered_cells(CirclePoint s, CirclePoint e, std::size_t grid) {
  const double len = d_plus(s, e);
  const auto g = static_cast<double>(grid);
  std::size_t c = std::min(static_cast<std::size_t>(s.value() * g), grid - 1);
  if (!(d_plus(cell_start(c, grid), s) < 1.0 / g)) c = (c + 1) % grid;  // rounding at a cell edge
  std::vector<std::size_t> out{c};
  for (std::size_t step = 1; step < grid; ++step) {
    const std::size_t next = (c + step) % grid;
    if (!(d_plus(s, cell_start(next, grid)) < len)) break;
    out.push_back(next);
  }
  return out;
}

}  // namespace

Minimality minimality_check(const IfsModel& model, Direction direction, std::size_t grid, std::size_t word_bound) {
  if (grid < 64) throw std::invalid_argument("minimality_check: grid must have at least 64 cells");
  std::vector<std::vector<std::size_t>> edges(grid);
  for (std::size_t c = 0; c < grid; ++c) {
    for (const auto& f : model.generators()) {
      const auto map = [&](CirclePoint p) { return direction == Direction::forward ? f.apply(p) : f.apply_inverse(p); };
      for (std::size_t d : covered_cells(map(cell_start(c, grid)), map(cell_start(c + 1, grid)), grid))
        edges[c].push_back(d);
    }
    std::sort(edges[c].begin(), edges[c].end());
    edges[c].erase(std::unique(edges[c].begin(), edges[c].end()), edges[c].end());
  }

  Minimality out;
  out.direction = direction;
  out.grid = grid;
  out.word_bound = word_bound;
  out.minimal = true;
  std::vector<std::size_t> smallest;
  std::vector<std::size_t> depth(grid);
  for (std::size_t c = 0; c < grid; ++c) {
    std::fill(depth.begin(), depth.end(), grid + word_bound + 1);
    std::deque<std::size_t> queue{c};
    depth[c] = 0;
    std::vector<std::size_t> reached{c};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      if (depth[u] >= word_bound) continue;
      for (std::size_t v : edges[u]) {
        if (depth[v] <= depth[u] + 1) continue;
        depth[v] = depth[u] + 1;
        out.depth = std::max(out.depth, depth[v]);
        reached.push_back(v);
        queue.push_back(v);
      }
    }
    if (reached.size() < grid) {
      out.minimal = false;
      if (smallest.empty() || reached.size() < smallest.size()) smallest = std::move(reached);
    }
  }
  std::sort(smallest.begin(), smallest.end());
  out.obstruction = std::move(smallest);
  return out;
}

Json Minimality::to_json() const {
  return {{"direction", direction == Direction::forward ? "forward" : "reverse"},
          {"grid", grid},
          {"word_bound", word_bound},
          {"minimal", minimal},
          {"depth", depth},
          {"obstruction", obstruction}};
}

}  // namespace crds

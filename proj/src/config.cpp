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

#include "crds/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "crds/homeo.hpp"
#include "crds/rds.hpp"
#include "crds/sde.hpp"

namespace crds {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

bool to_double(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool to_int(const std::string& s, std::int64_t& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

const std::set<std::string> kReserved = {"name",   "system",       "generators", "weights", "drift",
                                         "sigma",  "h",            "estimator",  "seed",    "realizations",
                                         "horizon", "require",     "output"};

}  // namespace

ConfigError::ConfigError(int line, std::string field, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ", " : std::string()) + "field '" + field +
                         "': " + message),
      line_(line),
      field_(std::move(field)) {}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shortest text that reads back to the same value.
  for (int digits = 1; digits < 17; ++digits) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", digits, x);
    double back = 0.0;
    if (to_double(shorter, back) && back == x) return shorter;
  }
  return buf;
}

void ExperimentConfig::fail(const std::string& key, const std::string& message) const {
  const auto it = lines.find(key);
  throw ConfigError(it == lines.end() ? 0 : it->second, key, message);
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig c;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool seen_seed = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(std::string_view(raw).substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(line, content, "expected key = value");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "", "missing key");
    if (c.lines.count(key)) throw ConfigError(line, key, "duplicate key");
    c.lines[key] = line;
    auto bad = [&](const std::string& why) { throw ConfigError(line, key, why); };

    if (key == "name") {
      if (value.empty() || value.find_first_of("/\\ ") != std::string::npos) bad("name must be a plain word");
      c.name = value;
    } else if (key == "output") {
      c.output = value;
    } else if (key == "system") {
      if (value != "ifs" && value != "sde") bad("expected ifs or sde");
      c.system = value;
    } else if (key == "generators") {
      c.generators = split(value, ';');
      for (const auto& g : c.generators) {
        try {
          (void)Homeo::parse(g);
        } catch (const std::exception& e) {
          bad("bad generator '" + g + "': " + e.what());
        }
      }
    } else if (key == "weights") {
      for (const auto& w : split(value, ',')) {
        double x = 0.0;
        if (!to_double(w, x)) bad("'" + w + "' is not a number");
        c.weights.push_back(x);
      }
    } else if (key == "drift") {
      try {
        (void)DriftSpec::parse(value);
      } catch (const std::exception& e) {
        bad(e.what());
      }
      c.drift = value;
    } else if (key == "sigma" || key == "h") {
      double x = 0.0;
      if (!to_double(value, x)) bad("'" + value + "' is not a number");
      (key == "sigma" ? c.sigma : c.h) = x;
    } else if (key == "estimator") {
      if (value.empty()) bad("empty estimator");
      c.estimator = value;
    } else if (key == "seed") {
      std::uint64_t s = 0;
      const char* end = value.data() + value.size();
      auto [ptr, ec] = std::from_chars(value.data(), end, s);
      if (ec != std::errc() || ptr != end) bad("seed must be a non-negative integer");
      c.seed = s;
      seen_seed = true;
    } else if (key == "realizations" || key == "horizon") {
      std::int64_t n = 0;
      if (!to_int(value, n) || n < 0) bad("expected a non-negative integer");
      if (key == "realizations") {
        c.realizations = static_cast<std::size_t>(n);
      } else {
        c.horizon = n;
      }
    } else if (key == "require") {
      for (const auto& r : split(value, ','))
        if (!r.empty()) c.require.push_back(r);
    } else {
      c.params[key] = value;
    }
  }

  if (!seen_seed) throw ConfigError(0, "seed", "a seed is mandatory");
  if (c.estimator.empty()) throw ConfigError(0, "estimator", "an estimator is mandatory");
  if (c.system == "ifs") {
    if (c.generators.empty()) c.fail("generators", "an ifs needs at least one generator");
    if (c.weights.empty()) c.weights.assign(c.generators.size(), 1.0 / static_cast<double>(c.generators.size()));
  } else if (c.drift.empty()) {
    c.fail("drift", "an sde needs a drift");
  }
  try {
    (void)c.build_system();
  } catch (const std::exception& e) {
    c.fail(c.system == "ifs" ? "weights" : (c.lines.count("h") ? "h" : "sigma"), e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "file", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string ExperimentConfig::to_text() const {
  std::string out;
  auto put = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  put("name", name);
  if (!output.empty()) put("output", output);
  put("system", system);
  if (system == "ifs") {
    std::string g;
    for (std::size_t i = 0; i < generators.size(); ++i) g += (i ? "; " : "") + generators[i];
    put("generators", g);
    std::string w;
    for (std::size_t i = 0; i < weights.size(); ++i) w += (i ? ", " : "") + format_number(weights[i]);
    put("weights", w);
  } else {
    put("drift", drift);
    put("sigma", format_number(sigma));
    put("h", format_number(h));
  }
  put("estimator", estimator);
  put("seed", std::to_string(seed));
  put("realizations", std::to_string(realizations));
  put("horizon", std::to_string(horizon));
  if (!require.empty()) {
    std::string r;
    for (std::size_t i = 0; i < require.size(); ++i) r += (i ? ", " : "") + require[i];
    put("require", r);
  }
  for (const auto& [k, v] : params) put(k, v);
  return out;
}

System ExperimentConfig::build_system() const {
  if (system == "sde") return System(SdeModel(DriftSpec::parse(drift), sigma, h));
  std::vector<Homeo> maps;
  for (const auto& g : generators) maps.push_back(Homeo::parse(g));
  return System(IfsModel(std::move(maps), weights));
}

double ExperimentConfig::number(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  double x = 0.0;
  if (!to_double(it->second, x)) fail(key, "'" + it->second + "' is not a number");
  return x;
}

std::int64_t ExperimentConfig::integer(const std::string& key, std::int64_t fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::int64_t n = 0;
  if (!to_int(it->second, n)) fail(key, "'" + it->second + "' is not an integer");
  return n;
}

std::string ExperimentConfig::text(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<double> ExperimentConfig::numbers(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::vector<double> out;
  for (const auto& item : split(it->second, ',')) {
    double x = 0.0;
    if (!to_double(item, x)) fail(key, "'" + item + "' is not a number");
    out.push_back(x);
  }
  return out;
}

CirclePoint ExperimentConfig::point(const std::string& key, double fallback) const {
  return CirclePoint(number(key, fallback));
}

std::vector<Arc> ExperimentConfig::arcs(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  const std::string& value = it == params.end() ? fallback : it->second;
  std::vector<Arc> out;
  for (const auto& item : split(value, ',')) {
    const auto colon = item.find(':');
    double a = 0.0;
    double b = 0.0;
    if (colon == std::string::npos || !to_double(trim(item.substr(0, colon)), a) ||
        !to_double(trim(item.substr(colon + 1)), b))
      fail(key, "expected start:end, got '" + item + "'");
    out.push_back(Arc{CirclePoint(a), CirclePoint(b)});
  }
  return out;
}

}  // namespace crds

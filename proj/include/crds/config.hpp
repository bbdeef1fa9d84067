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
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crds/circle.hpp"
#include "crds/system.hpp"

namespace crds {

/// A configuration problem, located by line (0 if not tied to a line) and field.
class ConfigError : public std::runtime_error {
public:
  ConfigError(int line, std::string field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

private:
  int line_;
  std::string field_;
};

/// One experiment: a system, an estimator with its parameters, and a seed.
///
/// Text form: one `key = value` per line, `#` starts a comment. Reserved keys
/// are name, system, generators (separated by `;`), weights (separated by
/// `,`), drift, sigma, h, estimator, seed, realizations, horizon, require and
/// output. Every other key is an estimator parameter.
struct ExperimentConfig {
  std::string name = "experiment";
  std::string system = "ifs";
  std::vector<std::string> generators;
  std::vector<double> weights;
  std::string drift;
  double sigma = 1.0;
  double h = 1.0 / 256.0;
  std::string estimator;
  std::uint64_t seed = 0;
  std::size_t realizations = 100;
  std::int64_t horizon = 500;
  std::vector<std::string> require;
  std::string output;  // file stem, defaults to name
  std::map<std::string, std::string> params;
  std::map<std::string, int> lines;  // key -> source line, for diagnostics

  static ExperimentConfig parse(std::string_view text);
  static ExperimentConfig load(const std::string& path);
  std::string to_text() const;

  System build_system() const;
  std::string stem() const { return output.empty() ? name : output; }

  // Estimator parameters; a malformed value raises ConfigError on its line.
  bool has(const std::string& key) const { return params.count(key) != 0; }
  double number(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;
  CirclePoint point(const std::string& key, double fallback) const;
  /// "start:end" arcs separated by commas.
  std::vector<Arc> arcs(const std::string& key, const std::string& fallback) const;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) { return a.to_text() == b.to_text(); }
};

std::string format_number(double x);

}  // namespace crds

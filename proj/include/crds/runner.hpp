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

#include <string>
#include <vector>

#include "crds/analysis.hpp"
#include "crds/config.hpp"

namespace crds {

enum class RunStatus { ok = 0, inconclusive = 1 };

struct PreconditionOutcome {
  std::string name;
  bool passed = false;
  Json detail;
};

struct RunReport {
  RunStatus status = RunStatus::ok;
  std::string verdict;
  std::vector<PreconditionOutcome> preconditions;
  Json result;
  std::string csv;
  Json summary() const;  // without the config; see summary_for
};

/// Names accepted by `estimator =`.
const std::vector<std::string>& estimator_names();

/// Checks the estimator name, its parameter keys and requirement names.
void validate(const ExperimentConfig& config);

/// Runs the preconditions and the estimator. Throws ConfigError for invalid
/// parameters; estimator-level doubt is reported through the status.
RunReport run_experiment(const ExperimentConfig& config, int workers = 1);

/// The JSON summary written next to the CSV: resolved config, seed, outcome.
std::string summary_text(const ExperimentConfig& config, const RunReport& report);

}  // namespace crds

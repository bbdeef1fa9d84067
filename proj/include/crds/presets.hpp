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

#include "crds/config.hpp"

namespace crds {

struct Preset {
  std::string name;
  std::string summary;
  std::string text;  // the config document
};

const std::vector<Preset>& presets();

/// Throws ConfigError for an unknown name.
ExperimentConfig preset(const std::string& name);

}  // namespace crds

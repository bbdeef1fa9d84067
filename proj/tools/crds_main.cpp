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

// crds command line: run experiment configs and named presets.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "crds/presets.hpp"
#include "crds/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInconclusive = 1;
constexpr int kExitConfig = 2;
constexpr int kExitFailure = 3;

struct Common {
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed, "override the config seed");
  cmd->add_option("--workers", common.workers, "OpenMP worker threads")->check(CLI::Range(1, 1024));
  cmd->add_option("--out-dir", common.out_dir, "directory for the CSV and JSON outputs");
}

int execute(crds::ExperimentConfig config, const Common& common) {
  if (common.seed) config.seed = *common.seed;
  const crds::RunReport report = crds::run_experiment(config, common.workers);

  std::filesystem::create_directories(common.out_dir);
  const auto base = std::filesystem::path(common.out_dir) / config.stem();
  const std::string csv_path = base.string() + ".csv";
  const std::string json_path = base.string() + ".json";
  std::ofstream(csv_path, std::ios::binary) << report.csv;
  std::ofstream(json_path, std::ios::binary) << crds::summary_text(config, report);

  std::printf("%s: %s (%s)\n", config.name.c_str(), report.verdict.c_str(),
              report.status == crds::RunStatus::ok ? "ok" : "inconclusive");
  std::printf("  csv:  %s\n  json: %s\n", csv_path.c_str(), json_path.c_str());
  return report.status == crds::RunStatus::ok ? kExitOk : kExitInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crds: random dynamical systems on the circle"};
  app.require_subcommand(1);

  Common common;
  std::string config_path;
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "config file")->required();
  add_common(run, common);

  std::string preset_name;
  bool emit = false;
  auto* preset = app.add_subcommand("preset", "run a named preset, or print its config");
  preset->add_option("name", preset_name, "preset name")->required();
  preset->add_flag("--emit-config", emit, "print the config instead of running it");
  add_common(preset, common);

  auto* list = app.add_subcommand("list-presets", "list the named presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*list) {
      for (const auto& p : crds::presets()) std::printf("%-18s %s\n", p.name.c_str(), p.summary.c_str());
      return kExitOk;
    }
    if (*preset) {
      crds::ExperimentConfig config = crds::preset(preset_name);
      if (emit) {
        if (common.seed) config.seed = *common.seed;
        std::fputs(config.to_text().c_str(), stdout);
        return kExitOk;
      }
      return execute(std::move(config), common);
    }
    return execute(crds::ExperimentConfig::load(config_path), common);
  } catch (const crds::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
}

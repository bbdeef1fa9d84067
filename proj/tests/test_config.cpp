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

#include <string>

#include "crds/config.hpp"
#include "crds/presets.hpp"
#include "crds/runner.hpp"
#include "doctest.h"

using namespace crds;

namespace {

int error_line(const std::string& text) {
  try {
    validate(ExperimentConfig::parse(text));
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_field(const std::string& text) {
  try {
    validate(ExperimentConfig::parse(text));
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

const char* const kBase =
    "# a comment\n"
    "name = trial\n"
    "system = ifs\n"
    "generators = rotation(0.6180339887); sine(0.1)   # trailing comment\n"
    "weights = 0.25, 0.75\n"
    "estimator = sync\n"
    "seed = 99\n"
    "realizations = 20\n"
    "horizon = 500\n"
    "x = 0.1\n"
    "y = 0.6\n";

}  // namespace

TEST_CASE("parse and round trip") {
  const auto c = ExperimentConfig::parse(kBase);
  CHECK(c.name == "trial");
  CHECK(c.generators.size() == 2);
  CHECK(c.weights == std::vector<double>{0.25, 0.75});
  CHECK(c.seed == 99);
  CHECK(c.realizations == 20);
  CHECK(c.horizon == 500);
  CHECK(c.number("x", 0.0) == 0.1);
  CHECK(c.number("missing", 3.5) == 3.5);
  CHECK(c.stem() == "trial");
  const auto again = ExperimentConfig::parse(c.to_text());
  CHECK(again == c);
  CHECK(again.to_text() == c.to_text());
  CHECK(c.build_system().is_ifs());
}

TEST_CASE("defaults") {
  const auto c = ExperimentConfig::parse("generators = sine(0.1); rotation(0.2)\nestimator = sync\nseed = 1\n");
  CHECK(c.weights == std::vector<double>{0.5, 0.5});
  CHECK(c.realizations == 100);
  CHECK(c.horizon == 500);
}

TEST_CASE("numbers print in shortest round-trip form") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-6) == "1e-06");
  CHECK(format_number(0.00390625) == "0.00390625");
  CHECK(std::stod(format_number(0.6180339887)) == 0.6180339887);
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("errors carry line and field") {
  const std::string base = kBase;
  CHECK(error_line("name = a\ngenerators = rotation(0.1); sine(\nestimator = sync\nseed = 1\n") == 2);
  CHECK(error_field("name = a\ngenerators = rotation(0.1); sine(\nestimator = sync\nseed = 1\n") == "generators");
  CHECK(error_line("generators = sine(0.1)\nestimator = sync\nseed = 1\nhorizon = ten\n") == 4);
  CHECK(error_field("generators = sine(0.1)\nestimator = sync\n") == "seed");
  CHECK(error_line("generators = sine(0.1)\nestimator = sync\nseed = 1\nseed = 2\n") == 4);
  CHECK(error_line("generators = sine(0.1)\njust words\n") == 2);
  CHECK(error_field(base + "bogus = 3\n") == "bogus");
  CHECK(error_line(base + "bogus = 3\n") == 12);
  CHECK(error_field("generators = sine(0.1)\nestimator = nonsense\nseed = 1\n") == "estimator");
  CHECK(error_field("generators = sine(0.1); rotation(0.1)\nweights = 1, 2, 3\nestimator = sync\nseed = 1\n") == "weights");
  CHECK(error_field("system = sde\ndrift = sine:8\nh = 0.1\nestimator = sync\nseed = 1\n") == "h");
  CHECK(error_field(base + "require = flying\n") == "require");
  CHECK(error_field("system = sde\ndrift = sine:1\nestimator = lyapunov\nseed = 1\n") == "estimator");
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("typed parameter accessors") {
  const auto c = ExperimentConfig::parse(std::string(kBase) + "arcs = 0.1:0.3, 0.9:0.2\nradii = 0.01, 0.05\nbad = 0.1:x\n");
  const auto a = c.arcs("arcs", "");
  REQUIRE(a.size() == 2);
  CHECK(a[1].start == CirclePoint(0.9));
  CHECK(c.numbers("radii", {}) == std::vector<double>{0.01, 0.05});
  CHECK_THROWS_AS(c.arcs("bad", ""), ConfigError);
  CHECK_THROWS_AS(c.integer("x", 0), ConfigError);
}

TEST_CASE("presets") {
  CHECK(presets().size() == 11);
  for (const auto& p : presets()) {
    CAPTURE(p.name);
    const auto c = preset(p.name);
    CHECK(c.name == p.name);
    CHECK_NOTHROW(validate(c));
    CHECK(ExperimentConfig::parse(c.to_text()) == c);
    CHECK_NOTHROW(c.build_system());
  }
  const auto kn = preset("kn04-sync");
  CHECK(kn.generators == std::vector<std::string>{"rotation(0.6180339887)", "sine(0.1)"});
  CHECK(kn.weights == std::vector<double>{0.5, 0.5});
  const auto gap = preset("sde-sine2-gap");
  CHECK(gap.system == "sde");
  CHECK(gap.drift == "sine:2");
  CHECK(distance(gap.point("x", -1), gap.point("y", -1)) == 0.5);
  const auto det = preset("det-simple");
  CHECK(det.generators == std::vector<std::string>{"sine(0.1)"});
  CHECK_THROWS_AS(preset("nope"), ConfigError);
}

TEST_CASE("small runs") {
  auto c = ExperimentConfig::parse(kBase);
  const auto r = run_experiment(c, 2);
  CHECK(r.status == RunStatus::ok);
  CHECK(r.csv.rfind("step,", 0) == 0);
  const auto summary = Json::parse(summary_text(c, r));
  CHECK(summary["seed"] == 99);
  CHECK(summary.contains("config"));

  c.generators = {"rotation(0.6180339887)", "rotation(0.4142135624)"};
  c.require = {"compressible"};
  const auto blocked = run_experiment(c, 2);
  CHECK(blocked.status == RunStatus::inconclusive);
  REQUIRE(blocked.preconditions.size() == 1);
  CHECK_FALSE(blocked.preconditions[0].passed);
}

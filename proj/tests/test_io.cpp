// Copyright 2026 The magic-sre Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "magic/io.hpp"
#include "magic/sre.hpp"

namespace magic {
namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::path(::testing::TempDir()) / name;
  std::ofstream(path) << text;
  return path.string();
}

TEST(StateJson, RoundTripIsExact) {
  Rng rng(5);
  const auto s = StateVector::haar_random(3, rng);
  const auto back = state_from_json(nlohmann::json::parse(state_to_json(s).dump()));
  ASSERT_EQ(back.n(), 3);
  EXPECT_EQ((back.amplitudes() - s.amplitudes()).norm(), 0.0);
}

TEST(StateJson, RenormalizesAndDefaultsImaginaryPart) {
  const auto s = state_from_json({{"n", 1}, {"re", {3.0, 4.0}}});
  EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
  EXPECT_NEAR(s[1].real(), 0.8, 1e-15);
  EXPECT_EQ(s[1].imag(), 0.0);
}

TEST(StateJson, RejectsMalformedInput) {
  EXPECT_THROW(state_from_json({{"re", {1.0}}}), DimensionError);
  EXPECT_THROW(state_from_json({{"n", 2}, {"re", {1.0, 0.0}}}), DimensionError);
  EXPECT_THROW(state_from_json({{"n", 1}, {"re", {0.0, 0.0}}}), DimensionError);
  EXPECT_THROW(read_state_file(write_temp("broken.json", "{not json")), DimensionError);
  EXPECT_THROW(read_state_file("/nonexistent/state.json"), DimensionError);
}

TEST(Presets, KnownSreValues) {
  EXPECT_NEAR(renyi_entropy(preset_state("t-plus"), 2.0).value, 2 - std::log2(3.0), 1e-12);
  EXPECT_NEAR(renyi_entropy(preset_state("t-plus", 3), 2.0).value, 3 * (2 - std::log2(3.0)),
              1e-12);
  EXPECT_NEAR(renyi_entropy(preset_state("ccz-plus"), 2.0).value, 5 - std::log2(11.0), 1e-12);
  for (const char* name : {"zero", "plus", "minus", "plus-i", "bell"}) {
    EXPECT_NEAR(renyi_entropy(preset_state(name, 2), 2.0).value, 0.0, 1e-12) << name;
  }
}

TEST(Presets, EveryListedNameResolves) {
  for (const auto& name : preset_names()) {
    EXPECT_TRUE(is_preset(name));
    EXPECT_NEAR(preset_state(name).amplitudes().norm(), 1.0, 1e-14) << name;
  }
  EXPECT_FALSE(is_preset("t_plus"));
  EXPECT_THROW(preset_state("t_plus"), DimensionError);
}

TEST(ResolveInput, PresetJsonAndCircuit) {
  EXPECT_EQ(resolve_input_state("plus", 2).n(), 2);

  const auto json_path = write_temp("bell.json", state_to_json(preset_state("bell")).dump());
  EXPECT_NEAR(resolve_input_state(json_path).fidelity(preset_state("bell")), 1.0, 1e-14);

  const auto circuit_path = write_temp("tplus.circ", "h 0\nt 0\n");
  EXPECT_NEAR(resolve_input_state(circuit_path).fidelity(preset_state("t-plus")), 1.0, 1e-14);

  EXPECT_THROW(resolve_input_state("no-such-thing"), DimensionError);
}

TEST(ReportJson, FieldsAndOptionalWallTime) {
  OptimizerReport r;
  r.best_value = 0.5;
  r.best_state = preset_state("plus");
  r.termination = Termination::kPrecisionFloor;
  r.wall_time_s = 1.25;
  const auto j = report_to_json(r);
  EXPECT_EQ(j.at("best_value").get<double>(), 0.5);
  EXPECT_EQ(j.at("termination").get<std::string>(), "precision_floor");
  EXPECT_FALSE(j.contains("wall_time_s"));
  EXPECT_EQ(report_to_json(r, true).at("wall_time_s").get<double>(), 1.25);

  const auto b = report_to_json(BoundReport{"ccz", 1.5, 4, 3});
  EXPECT_EQ(b.at("gate").get<std::string>(), "ccz");
  EXPECT_EQ(b.at("sre_bound").get<int>(), 4);
}

}  // namespace
}  // namespace magic

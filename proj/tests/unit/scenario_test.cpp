// Copyright 2026 The vgip Authors.
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

#include "vgip/scenario.hpp"

#include <gtest/gtest.h>

#include <string>

#include "vgip/errors.hpp"

namespace vgip {
namespace {

const char* kMinimal = R"({"factor":{"components":[{"weight":1,"type":"atom","x":0.5}]}})";

std::string field_of(const std::string& json) {
  try {
    parse_config(json);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(ParseConfig, DefaultsApply) {
  const auto c = parse_config(kMinimal);
  EXPECT_EQ(c.model.T, 1.0);
  EXPECT_EQ(c.n_steps, 500u);
  EXPECT_EQ(c.n_paths, 15u);
  EXPECT_EQ(c.payoff.kind(), Payoff::Kind::kIdentity);
  EXPECT_EQ(c.factor, MarketFactorDistribution::atom(0.5));
  EXPECT_EQ(c.verify.level, VerifyLevel::kQuick);
}

TEST(ParseConfig, FullDocument) {
  const auto c = parse_config(R"({
    "model": {"sigma": 2.5, "m": 10, "r": 0.03, "T": 2},
    "grid": {"n_steps": 40},
    "factor": {"components": [
      {"weight": 0.25, "type": "uniform", "a": 0, "b": 0.5},
      {"weight": 0.25, "type": "normal", "mu": 1, "nu": 0.5},
      {"weight": 0.25, "type": "exponential", "lambda": 2},
      {"weight": 0.25, "type": "tabulated", "nodes": [0, 1, 2], "densities": [0, 1, 0]}]},
    "payoff": {"type": "digital", "K": 0.75},
    "simulation": {"n_paths": 3, "seed": 18446744073709551615},
    "output": {"directory": "runs/x", "formats": ["csv", "posterior_json"]},
    "verify": {"level": "full", "sigma_band": 5, "ks_coefficient": 1.36}})");
  EXPECT_EQ(c.model.sigma, 2.5);
  EXPECT_EQ(c.grid().n_steps(), 40u);
  EXPECT_EQ(c.factor.parts().size(), 4u);
  EXPECT_EQ(c.payoff.kind(), Payoff::Kind::kDigital);
  EXPECT_EQ(c.payoff.parameter(), 0.75);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_EQ(c.output_formats.size(), 2u);
  EXPECT_EQ(c.verify.level, VerifyLevel::kFull);
  EXPECT_EQ(c.verify.sigma_band, 5.0);
}

TEST(ParseConfig, RoundTripIsIdentityOnCanonicalForm) {
  const auto c = parse_config(R"({
    "model": {"sigma": 0.1, "m": 0.3, "r": 0.07, "T": 1.7},
    "factor": {"components": [{"weight": 0.1, "type": "atom", "x": 0.30000000000000004},
                              {"weight": 0.9, "type": "normal", "mu": -1e-300, "nu": 3}]},
    "payoff": {"type": "exponential_scale", "q": 0.1}})");
  const auto text = serialize_config(c);
  const auto again = parse_config(text);
  EXPECT_EQ(serialize_config(again), text);
  EXPECT_EQ(again.factor, c.factor);
  EXPECT_EQ(again.model.sigma, 0.1);
  EXPECT_NE(text.find("0.30000000000000004"), std::string::npos);
}

TEST(ParseConfig, FieldLevelErrors) {
  EXPECT_EQ(field_of("{}"), "factor");
  EXPECT_EQ(field_of("not json"), "<document>");
  EXPECT_EQ(field_of(R"({"factor":{"components":[{"weight":1,"type":"atom","x":0}]},"extra":1})"),
            "extra");
  EXPECT_EQ(
      field_of(
          R"({"model":{"sigma":-1},"factor":{"components":[{"weight":1,"type":"atom","x":0}]}})"),
      "model.sigma");
  EXPECT_EQ(field_of(R"({"factor":{"components":[{"weight":1,"type":"cauchy"}]}})"),
            "factor.components[0].type");
  EXPECT_EQ(
      field_of(
          R"({"grid":{"n_steps":0},"factor":{"components":[{"weight":1,"type":"atom","x":0}]}})"),
      "grid.n_steps");
  EXPECT_EQ(
      field_of(
          R"({"simulation":{"n_paths":0},"factor":{"components":[{"weight":1,"type":"atom","x":0}]}})"),
      "simulation.n_paths");
  EXPECT_EQ(
      field_of(
          R"({"verify":{"sigma_band":-4},"factor":{"components":[{"weight":1,"type":"atom","x":0}]}})"),
      "verify.sigma_band");
  EXPECT_EQ(
      field_of(
          R"({"output":{"formats":["xml"]},"factor":{"components":[{"weight":1,"type":"atom","x":0}]}})"),
      "output.formats");
}

TEST(VerifyLevel, Parse) {
  EXPECT_EQ(parse_verify_level("quick"), VerifyLevel::kQuick);
  EXPECT_EQ(parse_verify_level("full"), VerifyLevel::kFull);
  EXPECT_THROW(parse_verify_level("medium"), ConfigError);
  EXPECT_STREQ(to_string(VerifyLevel::kFull), "full");
}

TEST(LoadConfig, MissingFile) {
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

}  // namespace
}  // namespace vgip

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

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <variant>

#include "vgip/errors.hpp"

namespace vgip {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void reject_unknown(const Json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where.empty() ? key : where + "." + key, "unknown key");
  }
}

std::string join(const std::string& where, const char* key) {
  return where.empty() ? std::string(key) : where + "." + key;
}

double get_number(const Json& obj, const std::string& where, const char* key) {
  const std::string field = join(where, key);
  if (!obj.contains(key)) throw ConfigError(field, "required");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double out = v.get<double>();
  if (!std::isfinite(out)) throw ConfigError(field, "must be finite");
  return out;
}

double number_or(const Json& obj, const std::string& where, const char* key, double fallback) {
  return obj.contains(key) ? get_number(obj, where, key) : fallback;
}

std::uint64_t unsigned_or(const Json& obj, const std::string& where, const char* key,
                          std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() ||
      (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(join(where, key), "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> number_array(const Json& obj, const std::string& where, const char* key) {
  const std::string field = join(where, key);
  if (!obj.contains(key) || !obj.at(key).is_array()) throw ConfigError(field, "expected an array");
  std::vector<double> out;
  for (const auto& v : obj.at(key)) {
    if (!v.is_number()) throw ConfigError(field, "expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

WeightedComponent parse_component(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ConfigError(join(where, "type"), "component needs a string type");
  }
  const std::string type = j.at("type").get<std::string>();
  const double weight = get_number(j, where, "weight");
  if (type == "atom") {
    reject_unknown(j, where, {"type", "weight", "x"});
    return {weight, component::Atom{get_number(j, where, "x")}};
  }
  if (type == "uniform") {
    reject_unknown(j, where, {"type", "weight", "a", "b"});
    return {weight, component::Uniform{get_number(j, where, "a"), get_number(j, where, "b")}};
  }
  if (type == "normal") {
    reject_unknown(j, where, {"type", "weight", "mu", "nu"});
    return {weight, component::Normal{get_number(j, where, "mu"), get_number(j, where, "nu")}};
  }
  if (type == "exponential") {
    reject_unknown(j, where, {"type", "weight", "lambda"});
    return {weight, component::Exponential{get_number(j, where, "lambda")}};
  }
  if (type == "tabulated") {
    reject_unknown(j, where, {"type", "weight", "nodes", "densities"});
    return {weight, component::Tabulated{number_array(j, where, "nodes"),
                                         number_array(j, where, "densities")}};
  }
  throw ConfigError(join(where, "type"), "unknown component type '" + type + "'");
}

Payoff parse_payoff(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ConfigError("payoff.type", "payoff needs a string type");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "identity") {
    reject_unknown(j, "payoff", {"type"});
    return Payoff::identity();
  }
  if (type == "exponential_scale") {
    reject_unknown(j, "payoff", {"type", "q"});
    return Payoff::exponential_scale(get_number(j, "payoff", "q"));
  }
  if (type == "digital") {
    reject_unknown(j, "payoff", {"type", "K"});
    return Payoff::digital(get_number(j, "payoff", "K"));
  }
  throw ConfigError("payoff.type", "unknown payoff type '" + type + "'");
}

OrderedJson component_json(const WeightedComponent& wc) {
  OrderedJson j;
  j["weight"] = wc.weight;
  std::visit(Overloaded{
                 [&](const component::Atom& a) {
                   j["type"] = "atom";
                   j["x"] = a.x;
                 },
                 [&](const component::Uniform& u) {
                   j["type"] = "uniform";
                   j["a"] = u.a;
                   j["b"] = u.b;
                 },
                 [&](const component::Normal& n) {
                   j["type"] = "normal";
                   j["mu"] = n.mu;
                   j["nu"] = n.nu;
                 },
                 [&](const component::Exponential& e) {
                   j["type"] = "exponential";
                   j["lambda"] = e.lambda;
                 },
                 [&](const component::Tabulated& t) {
                   j["type"] = "tabulated";
                   j["nodes"] = t.nodes;
                   j["densities"] = t.densities;
                 },
             },
             wc.component);
  return j;
}

}  // namespace

const char* to_string(VerifyLevel level) { return level == VerifyLevel::kFull ? "full" : "quick"; }

VerifyLevel parse_verify_level(const std::string& text) {
  if (text == "quick") return VerifyLevel::kQuick;
  if (text == "full") return VerifyLevel::kFull;
  throw ConfigError("verify.level", "expected 'quick' or 'full'");
}

void validate(const ScenarioConfig& c) {
  if (!(c.model.sigma > 0.0) || !std::isfinite(c.model.sigma)) {
    throw ConfigError("model.sigma", "must be positive");
  }
  if (!(c.model.m > 0.0) || !std::isfinite(c.model.m)) {
    throw ConfigError("model.m", "must be positive");
  }
  if (!std::isfinite(c.model.r)) throw ConfigError("model.r", "must be finite");
  if (!(c.model.T > 0.0) || !std::isfinite(c.model.T)) {
    throw ConfigError("model.T", "must be positive");
  }
  if (c.n_steps < 1) throw ConfigError("grid.n_steps", "must be >= 1");
  if (c.n_paths < 1) throw ConfigError("simulation.n_paths", "must be >= 1");
  if (c.output_directory.empty()) throw ConfigError("output.directory", "must not be empty");
  for (const auto& f : c.output_formats) {
    if (f != "csv" && f != "posterior_json") {
      throw ConfigError("output.formats", "unknown format '" + f + "'");
    }
  }
  if (!(c.verify.sigma_band > 0.0) || !std::isfinite(c.verify.sigma_band)) {
    throw ConfigError("verify.sigma_band", "must be positive");
  }
  if (!(c.verify.ks_coefficient > 0.0) || !std::isfinite(c.verify.ks_coefficient)) {
    throw ConfigError("verify.ks_coefficient", "must be positive");
  }
  // Re-run the distribution invariants.
  (void)MarketFactorDistribution::make(c.factor.parts());
}

ScenarioConfig parse_config(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(root, "", {"model", "grid", "factor", "payoff", "simulation", "output", "verify"});

  ScenarioConfig c;
  if (root.contains("model")) {
    const auto& m = root.at("model");
    reject_unknown(m, "model", {"sigma", "m", "r", "T"});
    c.model.sigma = number_or(m, "model", "sigma", c.model.sigma);
    c.model.m = number_or(m, "model", "m", c.model.m);
    c.model.r = number_or(m, "model", "r", c.model.r);
    c.model.T = number_or(m, "model", "T", c.model.T);
  }
  if (root.contains("grid")) {
    const auto& g = root.at("grid");
    reject_unknown(g, "grid", {"n_steps"});
    c.n_steps = unsigned_or(g, "grid", "n_steps", c.n_steps);
  }
  if (!root.contains("factor")) throw ConfigError("factor", "required");
  {
    const auto& f = root.at("factor");
    reject_unknown(f, "factor", {"components"});
    if (!f.contains("components") || !f.at("components").is_array()) {
      throw ConfigError("factor.components", "expected an array");
    }
    std::vector<WeightedComponent> parts;
    std::size_t i = 0;
    for (const auto& cj : f.at("components")) {
      parts.push_back(parse_component(cj, "factor.components[" + std::to_string(i++) + "]"));
    }
    c.factor = MarketFactorDistribution::make(std::move(parts));
  }
  if (root.contains("payoff")) c.payoff = parse_payoff(root.at("payoff"));
  if (root.contains("simulation")) {
    const auto& s = root.at("simulation");
    reject_unknown(s, "simulation", {"n_paths", "seed"});
    c.n_paths = unsigned_or(s, "simulation", "n_paths", c.n_paths);
    c.seed = unsigned_or(s, "simulation", "seed", c.seed);
  }
  if (root.contains("output")) {
    const auto& o = root.at("output");
    reject_unknown(o, "output", {"directory", "formats"});
    if (o.contains("directory")) {
      if (!o.at("directory").is_string())
        throw ConfigError("output.directory", "expected a string");
      c.output_directory = o.at("directory").get<std::string>();
    }
    if (o.contains("formats")) {
      if (!o.at("formats").is_array()) throw ConfigError("output.formats", "expected an array");
      c.output_formats.clear();
      for (const auto& f : o.at("formats")) {
        if (!f.is_string()) throw ConfigError("output.formats", "expected strings");
        c.output_formats.push_back(f.get<std::string>());
      }
    }
  }
  if (root.contains("verify")) {
    const auto& v = root.at("verify");
    reject_unknown(v, "verify", {"level", "sigma_band", "ks_coefficient"});
    if (v.contains("level")) {
      if (!v.at("level").is_string()) throw ConfigError("verify.level", "expected a string");
      c.verify.level = parse_verify_level(v.at("level").get<std::string>());
    }
    c.verify.sigma_band = number_or(v, "verify", "sigma_band", c.verify.sigma_band);
    c.verify.ks_coefficient = number_or(v, "verify", "ks_coefficient", c.verify.ks_coefficient);
  }
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  OrderedJson root;
  root["model"] = {{"sigma", c.model.sigma}, {"m", c.model.m}, {"r", c.model.r}, {"T", c.model.T}};
  root["grid"] = {{"n_steps", c.n_steps}};
  OrderedJson comps = OrderedJson::array();
  for (const auto& wc : c.factor.parts()) comps.push_back(component_json(wc));
  root["factor"] = {{"components", comps}};
  OrderedJson payoff;
  switch (c.payoff.kind()) {
    case Payoff::Kind::kIdentity: payoff["type"] = "identity"; break;
    case Payoff::Kind::kExponentialScale:
      payoff["type"] = "exponential_scale";
      payoff["q"] = c.payoff.parameter();
      break;
    case Payoff::Kind::kDigital:
      payoff["type"] = "digital";
      payoff["K"] = c.payoff.parameter();
      break;
    case Payoff::Kind::kCustom: throw ConfigError("payoff", "custom payoffs cannot be serialized");
  }
  root["payoff"] = payoff;
  root["simulation"] = {{"n_paths", c.n_paths}, {"seed", c.seed}};
  root["output"] = {{"directory", c.output_directory}, {"formats", c.output_formats}};
  root["verify"] = {{"level", to_string(c.verify.level)},
                    {"sigma_band", c.verify.sigma_band},
                    {"ks_coefficient", c.verify.ks_coefficient}};
  return root.dump(2) + "\n";
}

}  // namespace vgip

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

#include "vgip/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vgip/closed_form.hpp"
#include "vgip/errors.hpp"
#include "vgip/format.hpp"
#include "vgip/parallel.hpp"
#include "vgip/pricing_kernel.hpp"
#include "vgip/verify.hpp"

namespace vgip {
namespace {

std::ofstream open_output(const std::filesystem::path& file) {
  std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
  return out;
}

struct PricedPath {
  std::string rows;
  std::string posteriors;
};

// Row prefix is prepended verbatim; used by sweep for its axis/value columns.
std::vector<PricedPath> price_all(const ScenarioConfig& config, const RunOptions& options,
                                  const std::string& row_prefix, bool posteriors,
                                  std::string& method) {
  validate(config);
  const auto grid = config.grid();
  const Seed seed{options.seed.value_or(config.seed)};
  const auto bundle =
      simulate_paths(grid, config.model, config.factor, seed, config.n_paths, options.threads);

  std::optional<ClosedFormPricer> closed;
  if (!options.force_general_kernel) closed = match_closed_form(config.factor, config.payoff);
  method = closed ? closed->name : "general_kernel";
  const StatePricer pricer = closed ? closed->price : StatePricer([&config](const MarketState& s) {
    return price(config.payoff, config.factor, s);
  });

  const std::size_t n = grid.n_steps();
  const std::size_t stride = std::max<std::size_t>(1, n / 10);
  std::vector<PricedPath> out(bundle.paths.size());
  parallel_for(bundle.paths.size(), options.threads, [&](std::size_t i) {
    const auto& path = bundle.paths[i];
    const auto prices = price_path(pricer, config.payoff, path, grid, config.model);
    std::string& rows = out[i].rows;
    for (std::size_t k = 0; k < prices.size(); ++k) {
      rows += row_prefix;
      rows += std::to_string(path.id);
      rows += ',';
      rows += std::to_string(k);
      rows += ',';
      append_double(rows, grid.time(k));
      rows += ',';
      append_double(rows, path.info[k]);
      rows += ',';
      append_double(rows, path.bridge[k]);
      rows += ',';
      append_double(rows, prices[k]);
      rows += '\n';
    }
    if (!posteriors) return;
    for (std::size_t k = 0; k < n; k += stride) {
      auto& js = out[i].posteriors;
      js += "{\"path_id\":" + std::to_string(path.id) + ",\"k\":" + std::to_string(k) + ",\"t\":";
      append_double(js, grid.time(k));
      js += ",\"posterior\":";
      js += posterior(config.factor, state_at(path, grid, config.model, k)).to_json();
      js += "}\n";
    }
  });
  return out;
}

bool wants(const ScenarioConfig& config, const std::string& format) {
  return std::find(config.output_formats.begin(), config.output_formats.end(), format) !=
         config.output_formats.end();
}

}  // namespace

std::filesystem::path resolve_output_dir(const ScenarioConfig& config, const RunOptions& options) {
  if (options.out_dir) return *options.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return config.output_directory;
}

std::filesystem::path cmd_simulate(const ScenarioConfig& config, const RunOptions& options) {
  validate(config);
  const auto bundle =
      simulate_paths(config.grid(), config.model, config.factor,
                     Seed{options.seed.value_or(config.seed)}, config.n_paths, options.threads);
  const auto file = resolve_output_dir(config, options) / "paths.csv";
  auto out = open_output(file);
  write_paths_csv(bundle, out);
  return file;
}

PriceRun cmd_price(const ScenarioConfig& config, const RunOptions& options) {
  const bool posteriors = wants(config, "posterior_json");
  PriceRun run;
  const auto priced = price_all(config, options, "", posteriors, run.method);
  const auto dir = resolve_output_dir(config, options);
  run.csv = dir / "prices.csv";
  auto out = open_output(run.csv);
  out << "path_id,k,t,info,bridge,price\n";
  for (const auto& p : priced) out << p.rows;
  if (posteriors) {
    auto js = open_output(dir / "posteriors.jsonl");
    for (const auto& p : priced) js << p.posteriors;
  }
  return run;
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "sigma") return SweepAxis::kSigma;
  if (name == "m") return SweepAxis::kM;
  if (name == "r") return SweepAxis::kR;
  throw ConfigError("axis", "expected one of sigma, m, r; got '" + name + "'");
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kSigma: return "sigma";
    case SweepAxis::kM: return "m";
    case SweepAxis::kR: return "r";
  }
  return "?";
}

std::filesystem::path cmd_sweep(const ScenarioConfig& config, SweepAxis axis,
                                const std::vector<double>& values, const RunOptions& options) {
  if (values.empty()) throw ConfigError("values", "at least one value is required");
  const auto file = resolve_output_dir(config, options) / "sweep.csv";
  std::string body;
  for (double v : values) {
    ScenarioConfig c = config;
    switch (axis) {
      case SweepAxis::kSigma: c.model.sigma = v; break;
      case SweepAxis::kM: c.model.m = v; break;
      case SweepAxis::kR: c.model.r = v; break;
    }
    std::string prefix = std::string(to_string(axis)) + ',';
    append_double(prefix, v);
    prefix += ',';
    std::string method;
    for (const auto& p : price_all(c, options, prefix, false, method)) body += p.rows;
  }
  auto out = open_output(file);
  out << "axis,value,path_id,k,t,info,bridge,price\n" << body;
  return file;
}

RunReport cmd_verify(const VerifySpec& spec, unsigned threads, std::uint64_t seed) {
  return run_verification(spec, threads, seed);
}

}  // namespace vgip

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

// vgip: simulate information paths, price along them, sweep a parameter,
// or run the verification suite.
//
// Exit codes: 0 success, 1 a verification check failed, 2 usage or config
// error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vgip/commands.hpp"
#include "vgip/errors.hpp"
#include "vgip/parallel.hpp"
#include "vgip/scenario.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  bool force_general = false;
  std::optional<std::string> out;

  void attach(CLI::App* app, bool needs_config) {
    auto* c = app->add_option("--config", config, "scenario JSON file");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    app->add_option("--seed", seed, "master seed (overrides simulation.seed)");
    app->add_option("--threads", threads, "worker threads (0 = hardware)");
    app->add_flag("--force-general-kernel", force_general,
                  "price by quadrature even when a closed form applies");
    app->add_option("--out", out, "output directory (overrides $VGIP_OUT_DIR and config)");
  }

  vgip::RunOptions options() const {
    vgip::RunOptions o;
    o.seed = seed;
    o.threads = threads == 0 ? vgip::default_threads() : threads;
    o.force_general_kernel = force_general;
    o.out_dir = out;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variance-gamma information-based pricing toolkit"};
  app.require_subcommand(1);

  CommonFlags sim_flags, price_flags, sweep_flags;
  auto* simulate = app.add_subcommand("simulate", "write simulated paths to paths.csv");
  sim_flags.attach(simulate, true);

  auto* price = app.add_subcommand("price", "price along simulated paths into prices.csv");
  price_flags.attach(price, true);

  auto* sweep = app.add_subcommand("sweep", "repeat price over values of one parameter");
  sweep_flags.attach(sweep, true);
  std::string axis;
  std::vector<double> values;
  sweep->add_option("--axis", axis, "sigma, m or r")->required();
  sweep->add_option("--values", values, "comma-separated values")->required()->delimiter(',');

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  std::string level = "quick";
  std::optional<double> sigma_band, ks_coefficient;
  std::optional<std::uint64_t> verify_seed;
  unsigned verify_threads = 0;
  std::string verify_config;
  verify->add_option("--level", level, "quick or full");
  verify->add_option("--sigma-band", sigma_band, "moment tolerance in standard errors");
  verify->add_option("--ks-coefficient", ks_coefficient, "KS critical coefficient");
  verify->add_option("--seed", verify_seed, "master seed");
  verify->add_option("--threads", verify_threads, "worker threads (0 = hardware)");
  verify->add_option("--config", verify_config, "scenario JSON providing a verify section")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      const auto config = vgip::load_config(sim_flags.config);
      std::cout << vgip::cmd_simulate(config, sim_flags.options()).string() << '\n';
      return 0;
    }
    if (price->parsed()) {
      const auto config = vgip::load_config(price_flags.config);
      const auto run = vgip::cmd_price(config, price_flags.options());
      std::cout << run.csv.string() << " (" << run.method << ")\n";
      return 0;
    }
    if (sweep->parsed()) {
      const auto config = vgip::load_config(sweep_flags.config);
      const auto file =
          vgip::cmd_sweep(config, vgip::parse_sweep_axis(axis), values, sweep_flags.options());
      std::cout << file.string() << '\n';
      return 0;
    }
    vgip::VerifySpec spec;
    if (!verify_config.empty()) spec = vgip::load_config(verify_config).verify;
    if (verify->count("--level") > 0 || verify_config.empty()) {
      spec.level = vgip::parse_verify_level(level);
    }
    if (sigma_band) spec.sigma_band = *sigma_band;
    if (ks_coefficient) spec.ks_coefficient = *ks_coefficient;
    const unsigned threads = verify_threads == 0 ? vgip::default_threads() : verify_threads;
    const auto report = verify_seed ? vgip::cmd_verify(spec, threads, *verify_seed)
                                    : vgip::cmd_verify(spec, threads);
    std::cout << report.to_text();
    return report.passed() ? 0 : kExitCheckFailed;
  } catch (const vgip::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

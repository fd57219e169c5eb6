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

#include "vgip/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <chrono>
#include <cmath>
#include <string>

#include "vgip/closed_form.hpp"
#include "vgip/errors.hpp"
#include "vgip/format.hpp"
#include "vgip/parallel.hpp"
#include "vgip/path_sim.hpp"
#include "vgip/pricing_kernel.hpp"
#include "vgip/random.hpp"
#include "vgip/special_math.hpp"

namespace vgip {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CheckResult from_moment(const MomentCheck& m) {
  CheckResult c;
  c.name = m.name;
  c.statistic = m.statistic;
  c.tolerance = m.k * m.standard_error;
  c.passed = m.passed();
  c.detail = "target=" + format_double(m.target) + " se=" + format_double(m.standard_error) +
             " N=" + std::to_string(m.n);
  return c;
}

template <class Fn>
void timed(RunReport& report, Fn&& fn) {
  const auto start = Clock::now();
  std::vector<CheckResult> results = fn();
  const double elapsed = seconds_since(start) / static_cast<double>(results.size());
  for (auto& r : results) {
    r.seconds = elapsed;
    report.add(std::move(r));
  }
}

CheckResult threshold_check(std::string name, double statistic, double tolerance,
                            std::string detail = {}) {
  return {std::move(name), statistic, tolerance, statistic <= tolerance, 0.0, std::move(detail)};
}

// Negative controls pass when the wrapped statistical test fails.
CheckResult negative_control(std::string name, double statistic, double tolerance,
                             bool inner_passed) {
  return {
      std::move(name), statistic, tolerance,
      !inner_passed,   0.0,       inner_passed ? "control was not detected" : "control detected"};
}

std::vector<CheckResult> special_function_checks() {
  std::vector<CheckResult> out;
  boost::math::quadrature::exp_sinh<double> integrator;
  double worst = 0.0;
  for (double z : {0.01, 0.1, 0.5, 1.0, 1.5, 2.0, 5.0, 10.0, 30.0}) {
    const double oracle =
        integrator.integrate([z](double u) { return std::exp(-(z + u)) / (z + u); }, 0.0,
                             std::numeric_limits<double>::infinity());
    worst = std::max(worst, relative_difference(exp_integral_e1(z), oracle));
  }
  out.push_back(threshold_check("e1_vs_quadrature", worst, 1e-8));

  double additivity = 0.0;
  for (double m : {0.5, 1.0, 4.0}) {
    const double whole = levy_measure_interval(m, LevyInterval::make(0.3, 2.5));
    const double parts = levy_measure_interval(m, LevyInterval::make(0.3, 1.1)) +
                         levy_measure_interval(m, LevyInterval::make(1.1, 2.5));
    additivity = std::max(additivity, relative_difference(whole, parts));
  }
  out.push_back(threshold_check("levy_measure_additivity", additivity, 1e-12));

  const auto ab = LevyInterval::make(1.0, 2.0);
  const auto cd = LevyInterval::make(1.5, 2.5);
  double prev = 0.0;
  double min_step = INFINITY;
  bool ok = true;
  for (double m : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double ratio = levy_ratio(m, ab, cd);
    ok = ok && ratio > 1.0 && ratio > prev;
    if (prev > 0.0) min_step = std::min(min_step, ratio - prev);
    prev = ratio;
  }
  out.push_back({"levy_ratio_gt1_increasing_in_m", min_step, 0.0, ok, 0.0,
                 "min successive increase over m in {0.25..16}"});
  return out;
}

std::vector<CheckResult> levy_exponent_checks(std::size_t n, std::uint64_t seed, double band) {
  const double m = 4.0;
  const double alpha = 1.0;
  Xoshiro256pp rng(Seed{seed}, 0, Stage::kTest);
  GammaSampler gamma;
  NormalSampler normal;
  std::vector<double> g_mgf(n), v_mgf(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = gamma(rng, m, 1.0 / m);
    g_mgf[i] = std::exp(alpha * g);
    v_mgf[i] = std::exp(alpha * std::sqrt(g) * normal(rng));
  }
  return {
      from_moment(mean_check("gamma_levy_exponent_mgf", g_mgf,
                             std::exp(gamma_levy_exponent(alpha, GammaParams::standard(m))), band)),
      from_moment(
          mean_check("vg_levy_exponent_mgf", v_mgf, std::exp(vg_levy_exponent(alpha, m)), band)),
  };
}

std::vector<CheckResult> subordinator_checks(std::size_t n, std::uint64_t seed, unsigned threads,
                                             double band) {
  const double m = 2.0;
  const auto grid = TimeGrid::make(1.0, 10);
  std::vector<double> terminal(n), cube(n);
  parallel_for(n, threads, [&](std::size_t i) {
    terminal[i] = sample_gamma_path(grid, m, Seed{seed}, i).back();
    cube[i] = terminal[i] * terminal[i] * terminal[i];
  });
  const auto p = GammaParams::standard(m);
  return {
      from_moment(mean_check("subordinator_mean", terminal, 1.0, band)),
      from_moment(variance_check("subordinator_variance", terminal, 1.0 / m, band)),
      from_moment(
          mean_check("subordinator_third_moment", cube, subordinator_moment(3, p, 1.0), band)),
  };
}

std::vector<CheckResult> bridge_checks(std::size_t n, std::uint64_t seed, unsigned threads,
                                       double band) {
  const double m = 100.0;
  const double T = 1.0;
  const auto grid = TimeGrid::make(T, 2);
  const ModelParams model{1.0, m, 0.0, T};
  const auto dist = MarketFactorDistribution::atom(0.0);
  std::vector<double> bridge(n), vgb(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto path = simulate_path(grid, model, dist, Seed{seed}, i);
    bridge[i] = path.bridge[1];
    vgb[i] = path.vgb[1];
  });
  const auto bm = bridge_moments(m, 0.5, T);
  return {
      from_moment(mean_check("bridge_mean_t_half", bridge, bm.mean, band)),
      from_moment(variance_check("bridge_variance_t_half", bridge, bm.variance, band)),
      from_moment(mean_check("vg_bridge_mean_t_half", vgb, 0.0, band)),
      from_moment(
          variance_check("vg_bridge_variance_t_half", vgb, vg_bridge_variance(m, 0.5, T), band)),
  };
}

std::vector<CheckResult> conditional_variance_check(std::size_t n, std::uint64_t seed,
                                                    unsigned threads, double band) {
  // Through-origin regression of Gamma_tT^2 on gamma_tT (1 - gamma_tT).
  const auto grid = TimeGrid::make(1.0, 4);
  const ModelParams model{1.0, 1.0, 0.0, 1.0};
  const auto dist = MarketFactorDistribution::atom(0.0);
  std::vector<double> x(n), y(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto path = simulate_path(grid, model, dist, Seed{seed}, i);
    x[i] = path.bridge[1] * (1.0 - path.bridge[1]);
    y[i] = path.vgb[1] * path.vgb[1];
  });
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = sxy / sxx;
  double meat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - slope * x[i];
    meat += x[i] * x[i] * e * e;
  }
  const double se = std::sqrt(meat) / sxx;
  return {{"vg_bridge_conditional_second_moment_slope", std::abs(slope - 1.0), band * se,
           std::abs(slope - 1.0) <= band * se, 0.0, "slope=" + format_double(slope)}};
}

std::vector<CheckResult> distribution_law_checks(std::size_t n, std::uint64_t seed,
                                                 unsigned threads, double ks_coefficient) {
  const double m = 10.0;
  const auto grid = TimeGrid::make(1.0, 10);
  const std::size_t k = 3;
  const double t = grid.time(k);
  std::vector<double> bridge(n);
  parallel_for(n, threads, [&](std::size_t i) {
    bridge[i] = bridge_from_gamma(sample_gamma_path(grid, m, Seed{seed}, i))[k];
  });
  const auto ok =
      ks_test(bridge, [&](double x) { return beta_cdf(x, m * t, m * (1.0 - t)); }, ks_coefficient);
  const double wrong_m = m / 2.0;
  const auto bad = ks_test(
      bridge, [&](double x) { return beta_cdf(x, wrong_m * t, wrong_m * (1.0 - t)); },
      ks_coefficient);
  return {
      {"bridge_beta_law_ks", ok.statistic, ok.critical, ok.passed, 0.0,
       "Beta(" + format_double(m * t) + "," + format_double(m * (1.0 - t)) + ")"},
      negative_control("bridge_beta_law_ks_wrong_m_control", bad.statistic, bad.critical,
                       bad.passed),
  };
}

std::vector<CheckResult> independence_checks(std::size_t n, std::uint64_t seed, unsigned threads,
                                             double band) {
  // s = 0.25, t = 0.5, u = 0.75, v = 1 on a 4-step grid.
  const auto grid = TimeGrid::make(1.0, 4);
  const ModelParams model{1.0, 1.0, 0.0, 1.0};
  const auto dist = MarketFactorDistribution::normal(0.0, 1.0);
  std::vector<double> g_st(n), gamma_u(n), g_uv(n), xi(n), x(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto p = simulate_path(grid, model, dist, Seed{seed}, i);
    auto sub = [&](std::size_t a, std::size_t b) {
      return (p.w[a] - p.gamma[a] / p.gamma[b] * p.w[b]) / std::sqrt(p.gamma[b]);
    };
    g_st[i] = sub(1, 2);
    gamma_u[i] = p.gamma[3];
    g_uv[i] = sub(3, 4);
    xi[i] = p.info[2];
    x[i] = p.x_draw;
  });
  const auto bridge_vs_subordinator = correlation_zero_test(g_st, gamma_u, band);
  const auto disjoint_bridges = correlation_zero_test(g_st, g_uv, band);
  const auto control = correlation_zero_test(xi, x, band);
  return {
      {"vgbridge_uncorrelated_with_later_subordinator",
       std::abs(bridge_vs_subordinator.r),
       bridge_vs_subordinator.bound,
       bridge_vs_subordinator.passed,
       0.0,
       {}},
      {"disjoint_vgbridges_uncorrelated",
       std::abs(disjoint_bridges.r),
       disjoint_bridges.bound,
       disjoint_bridges.passed,
       0.0,
       {}},
      negative_control("information_vs_factor_correlation_control", std::abs(control.r),
                       control.bound, control.passed),
  };
}

std::vector<CheckResult> decomposition_check(std::uint64_t seed, unsigned threads) {
  const std::size_t n_paths = 1000;
  const auto grid = TimeGrid::make(1.0, 200);
  const ModelParams model{2.0, 100.0, 0.0, 1.0};
  const auto dist = MarketFactorDistribution::normal(0.0, 1.0);
  std::vector<double> worst(n_paths);
  parallel_for(n_paths, threads, [&](std::size_t i) {
    const auto p = simulate_path(grid, model, dist, Seed{seed}, i);
    Xoshiro256pp pick(Seed{seed}, i, Stage::kTest);
    double w = 0.0;
    for (int j = 0; j < 10; ++j) {
      std::size_t a = pick() % grid.size();
      std::size_t b = pick() % grid.size();
      std::size_t c = pick() % grid.size();
      std::size_t sorted[3] = {a, b, c};
      std::sort(sorted, sorted + 3);
      if (sorted[1] == 0) sorted[1] = 1;
      sorted[2] = std::max(sorted[2], sorted[1]);
      const auto r = decomposition_checks(p, std::min(sorted[0], sorted[1]), sorted[1], sorted[2]);
      const auto r2 =
          decomposition_checks(p, std::min(sorted[0], sorted[1]), sorted[1], grid.n_steps());
      w = std::max({w, r.vg_bridge, r.information, r2.vg_bridge, r2.information});
    }
    worst[i] = w;
  });
  return {threshold_check("pathwise_decomposition_residual",
                          *std::max_element(worst.begin(), worst.end()), 1e-10)};
}

std::vector<CheckResult> factor_sampling_checks(std::size_t n, std::uint64_t seed, double band) {
  const auto binary = MarketFactorDistribution::binary(0.4, 0.6);
  const auto normal = MarketFactorDistribution::normal(0.0, 1.0);
  std::vector<double> b(n), z(n);
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = sample_market_factor(binary, Seed{seed}, i);
    z[i] = sample_market_factor(normal, Seed{seed}, i);
  }
  return {
      from_moment(mean_check("factor_binary_frequency", b, 0.6, band)),
      from_moment(mean_check("factor_normal_mean", z, 0.0, band)),
      from_moment(variance_check("factor_normal_variance", z, 1.0, band)),
  };
}

std::vector<CheckResult> pricing_checks() {
  std::vector<CheckResult> out;
  const std::vector<MarketFactorDistribution> priors = {
      MarketFactorDistribution::binary(0.4, 0.6),
      MarketFactorDistribution::recovery(0.4, 0.6, 0.0, 0.5, 1.0),
      MarketFactorDistribution::normal(0.0, 1.0),
      MarketFactorDistribution::exponential(1.0),
      MarketFactorDistribution::make({{0.3, component::Atom{-1.0}},
                                      {0.3, component::Normal{0.5, 2.0}},
                                      {0.4, component::Uniform{-2.0, 3.0}}}),
  };
  double worst = 0.0;
  for (const auto& prior : priors) {
    for (const auto& s : oracle_state_grid()) {
      worst = std::max(worst, std::abs(posterior(prior, s).total_mass() - 1.0));
    }
  }
  out.push_back(threshold_check("posterior_normalization", worst, 1e-10));

  const auto bin = compare_binary_bond(0.4, 0.6);
  const auto rec = compare_recovery_bond(0.4, 0.6, 0.0, 0.5, 1.0);
  const auto ln = compare_power_payoff(0.0, 1.0, 1.0);
  const auto pw = compare_power_payoff(0.0, 1.0, 2.0);
  const auto ex = compare_exponential(1.0);
  out.push_back(threshold_check("oracle_binary_bond", bin.max_rel_error, 1e-8));
  out.push_back(threshold_check("oracle_recovery_bond", rec.max_rel_error, 1e-8));
  out.push_back(threshold_check("oracle_lognormal", ln.max_rel_error, 1e-8));
  out.push_back(threshold_check("oracle_power_payoff_q2", pw.max_rel_error, 1e-8));
  out.push_back(threshold_check("oracle_exponential", ex.max_rel_error, 1e-8));

  MarketState spot;
  spot.xi = 0.5;
  spot.bridge = 0.5;
  spot.t = 0.5;
  const double bond = binary_bond_price(BinaryBondSpec::make(0.4, 0.6), spot);
  out.push_back(threshold_check("binary_bond_spot", std::abs(bond - 0.71207), 1e-5,
                                "price=" + format_double(bond)));

  MarketState origin;
  const double s0 = lognormal_price(LogNormalSpec::make(0.0, 1.0), origin);
  out.push_back(threshold_check("lognormal_s0", std::abs(s0 - 1.6487212707001282), 1e-9));

  double forms = 0.0;
  for (const auto& s : oracle_state_grid()) {
    for (double mu : {-0.5, 0.0, 0.7}) {
      const auto spec = LogNormalSpec::make(mu, 1.0);
      forms = std::max(forms, relative_difference(lognormal_price(spec, s),
                                                  lognormal_price_tilt_ratio(spec, s)));
    }
  }
  out.push_back(threshold_check("lognormal_forms_agree", forms, 1e-12));
  return out;
}

struct BinaryPaths {
  std::vector<std::vector<double>> prices;
  TimeGrid grid;
};

BinaryPaths binary_bond_paths(std::size_t n, double sigma, std::size_t n_steps, std::uint64_t seed,
                              unsigned threads) {
  const auto grid = TimeGrid::make(1.0, n_steps);
  const ModelParams model{sigma, 100.0, 0.0, 1.0};
  const auto dist = MarketFactorDistribution::binary(0.4, 0.6);
  const auto spec = BinaryBondSpec::make(0.4, 0.6);
  const StatePricer pricer = [spec](const MarketState& s) { return binary_bond_price(spec, s); };
  BinaryPaths out{std::vector<std::vector<double>>(n), grid};
  parallel_for(n, threads, [&](std::size_t i) {
    const auto p = simulate_path(grid, model, dist, Seed{seed}, i);
    out.prices[i] = price_path(pricer, Payoff::identity(), p, grid, model);
  });
  return out;
}

std::vector<CheckResult> martingale_checks(std::size_t n, std::uint64_t seed, unsigned threads,
                                           double band) {
  auto paths = binary_bond_paths(n, 1.0, 100, seed, threads);
  const auto mg = martingale_flatness(paths.prices, 0.0, paths.grid, 10, band);
  for (auto& p : paths.prices) {
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += 0.01 * paths.grid.time(k);
  }
  const auto drift = martingale_flatness(paths.prices, 0.0, paths.grid, 10, band);
  return {
      {"martingale_flatness_binary_bond", mg.worst_z, band, mg.passed, 0.0,
       "worst node " + std::to_string(mg.worst_node)},
      negative_control("martingale_injected_drift_control", drift.worst_z, band, drift.passed),
  };
}

double terminal_hit_rate(std::size_t n, double sigma, std::uint64_t seed, unsigned threads) {
  const auto grid = TimeGrid::make(1.0, 100);
  const ModelParams model{sigma, 100.0, 0.0, 1.0};
  const auto dist = MarketFactorDistribution::binary(0.4, 0.6);
  const auto spec = BinaryBondSpec::make(0.4, 0.6);
  std::vector<char> hit(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto p = simulate_path(grid, model, dist, Seed{seed}, i);
    const double price = binary_bond_price(spec, state_at(p, grid, model, 99));
    hit[i] = std::abs(price - p.x_draw) <= 0.15;
  });
  return static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / static_cast<double>(n);
}

std::vector<CheckResult> terminal_checks(std::size_t n, std::uint64_t seed, unsigned threads) {
  const double strong = terminal_hit_rate(n, 4.0, seed, threads);
  const double weak = terminal_hit_rate(n, 0.1, seed, threads);
  return {
      {"terminal_classification_sigma4", strong, 0.95, strong >= 0.95, 0.0,
       "fraction within 0.15 at t=0.99T"},
      negative_control("terminal_classification_sigma0.1_control", weak, 0.95, weak >= 0.95),
  };
}

}  // namespace

std::vector<MarketState> oracle_state_grid() {
  std::vector<MarketState> out;
  for (double sigma : {1.0, 2.0, 3.0, 4.0}) {
    for (double bridge : {0.01, 0.25, 0.5, 0.75, 0.99}) {
      for (double xi : {-5.0, -2.5, 0.0, 2.5, 5.0}) {
        MarketState s;
        s.T = 1.0;
        s.t = bridge;
        s.xi = xi;
        s.bridge = bridge;
        s.sigma = sigma;
        s.r = 0.03;
        s.m = 100.0;
        out.push_back(s);
      }
    }
  }
  return out;
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

namespace {

template <class ClosedForm>
OracleComparison compare_on_grid(const MarketFactorDistribution& dist, const Payoff& payoff,
                                 ClosedForm&& closed) {
  OracleComparison out;
  for (const auto& s : oracle_state_grid()) {
    out.max_rel_error =
        std::max(out.max_rel_error, relative_difference(closed(s), price(payoff, dist, s)));
    ++out.states;
  }
  return out;
}

}  // namespace

OracleComparison compare_binary_bond(double p0, double p1) {
  const auto spec = BinaryBondSpec::make(p0, p1);
  return compare_on_grid(MarketFactorDistribution::binary(p0, p1), Payoff::identity(),
                         [&](const MarketState& s) { return binary_bond_price(spec, s); });
}

OracleComparison compare_recovery_bond(double p0, double p1, double a, double b, double c) {
  const auto spec = RecoveryBondSpec::make(p0, p1, a, b, c);
  return compare_on_grid(MarketFactorDistribution::recovery(p0, p1, a, b, c), Payoff::identity(),
                         [&](const MarketState& s) { return recovery_bond_price(spec, s); });
}

OracleComparison compare_power_payoff(double mu, double nu, double q) {
  const auto spec = LogNormalSpec::make(mu, nu, q);
  return compare_on_grid(MarketFactorDistribution::normal(mu, nu), Payoff::exponential_scale(q),
                         [&](const MarketState& s) { return power_payoff_price(spec, s); });
}

OracleComparison compare_exponential(double lambda) {
  const auto spec = ExponentialSpec::make(lambda);
  return compare_on_grid(MarketFactorDistribution::exponential(lambda), Payoff::identity(),
                         [&](const MarketState& s) { return exponential_payoff_price(spec, s); });
}

VerifySizes verify_sizes(VerifyLevel level) {
  if (level == VerifyLevel::kFull) return {1000000, 100000, 1000000, 100000, 100000};
  return {200000, 10000, 100000, 100000, 10000};
}

RunReport run_verification(const VerifySpec& spec, unsigned threads, std::uint64_t seed) {
  if (!(spec.sigma_band > 0.0) || !std::isfinite(spec.sigma_band)) {
    throw ConfigError("verify.sigma_band", "must be positive");
  }
  if (!(spec.ks_coefficient > 0.0) || !std::isfinite(spec.ks_coefficient)) {
    throw ConfigError("verify.ks_coefficient", "must be positive");
  }
  const auto sizes = verify_sizes(spec.level);
  const double band = spec.sigma_band;
  RunReport report;
  timed(report, [&] { return special_function_checks(); });
  timed(report, [&] { return levy_exponent_checks(sizes.moment_paths, seed, band); });
  timed(report, [&] { return subordinator_checks(sizes.moment_paths, seed, threads, band); });
  timed(report, [&] { return bridge_checks(sizes.moment_paths, seed, threads, band); });
  timed(report,
        [&] { return conditional_variance_check(sizes.moment_paths, seed, threads, band); });
  timed(report, [&] {
    return distribution_law_checks(sizes.ks_paths, seed, threads, spec.ks_coefficient);
  });
  timed(report, [&] { return independence_checks(sizes.correlation_paths, seed, threads, band); });
  timed(report, [&] { return decomposition_check(seed, threads); });
  timed(report, [&] { return factor_sampling_checks(sizes.moment_paths, seed, band); });
  timed(report, [&] { return pricing_checks(); });
  timed(report, [&] { return martingale_checks(sizes.martingale_paths, seed, threads, band); });
  timed(report, [&] { return terminal_checks(sizes.terminal_paths, seed, threads); });
  return report;
}

}  // namespace vgip

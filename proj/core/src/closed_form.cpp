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

#include "vgip/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <variant>

#include "vgip/errors.hpp"
#include "vgip/special_math.hpp"

namespace vgip {
namespace {

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double log_phi(double z) { return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi); }

// The log-kernel is alpha x - beta x^2 / 2 with these coefficients.  Working
// with (alpha, beta) instead of the Gaussian (mu, nu) = (alpha/beta,
// beta^{-1/2}) keeps every formula finite as the bridge tends to zero.
struct KernelQuadratic {
  double alpha;
  double beta;
};

KernelQuadratic kernel_quadratic(const MarketState& s) {
  const double b = s.bridge;
  return {s.sigma * s.xi / (1.0 - b), s.sigma * s.sigma * b / (1.0 - b)};
}

// 1 / (k + c1 beta / (k + c2 beta / (k + ...))) with c_j = j + offset, by
// modified Lentz.  For k > 0 this is the Laplace continued fraction of the
// normal Mills ratio in scaled form; it converges fast once k^2 >> beta.
double laplace_fraction(double k, double beta, int offset) {
  constexpr double kTiny = 1e-300;
  double f = k;
  double c = f;
  double d = 0.0;
  for (int j = 1; j < 5000; ++j) {
    const double a = (j + offset) * beta;
    d = k + a * d;
    d = d == 0.0 ? kTiny : d;
    d = 1.0 / d;
    c = k + a / c;
    c = c == 0.0 ? kTiny : c;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

// int_0^inf e^{-k v - beta v^2/2} dv and the mean of v under that weight,
// for k > 0.
struct HalfLine {
  double mass;
  double mean;
};

HalfLine decaying_half_line(double k, double beta) {
  return {laplace_fraction(k, beta, 0), laplace_fraction(k, beta, 1)};
}

// log int_0^1 e^{A y - B y^2} dy and the mean of y under that weight, B >= 0.
struct UnitTilt {
  double log_mass;
  double mean;
};

UnitTilt unit_interval_tilt(double A, double B) {
  if (A > B) {
    // Mass leans toward y = 1: reflect y -> 1 - y.
    const UnitTilt r = unit_interval_tilt(2.0 * B - A, B);
    return {r.log_mass + (A - B), 1.0 - r.mean};
  }
  if (std::abs(A) <= 1.0 && B <= 1.0) {
    // Nearly flat: Taylor coefficients of g = e^{Ay - By^2} from
    // g' = (A - 2By) g, integrated term by term.
    double t_prev = 0.0;
    double t = 1.0;
    double i0 = 0.0;
    double i1 = 0.0;
    for (int n = 0; n < 200; ++n) {
      i0 += t / (n + 1);
      i1 += t / (n + 2);
      const double next = (A * t - 2.0 * B * t_prev) / (n + 1);
      t_prev = t;
      t = next;
      if (std::abs(t) + std::abs(t_prev) < 1e-18 * i0) break;
    }
    return {std::log(i0), i1 / i0};
  }
  const double h = std::sqrt(2.0 * B);
  if (A < -2.0 * h) {
    // Steep decay from y = 0: half line minus its shifted tail beyond 1.
    const HalfLine head = decaying_half_line(-A, 2.0 * B);
    const HalfLine tail = decaying_half_line(2.0 * B - A, 2.0 * B);
    const double f1 = std::exp(A - B);
    const double i0 = head.mass - f1 * tail.mass;
    const double i1 = head.mass * head.mean - f1 * tail.mass * (1.0 + tail.mean);
    return {std::log(i0), i1 / i0};
  }
  // Mode within a couple of standard deviations of the interval.
  const double s = 1.0 / h;
  const double mode = A / (2.0 * B);
  const double l = -mode / s;
  const double u = (1.0 - mode) / s;
  const double log_diff = log_normal_cdf_diff(l, u);
  const double log_mass =
      std::log(s) + 0.5 * std::log(2.0 * std::numbers::pi) + 0.5 * l * l + log_diff;
  const double mean =
      mode + s * (std::exp(log_phi(l) - log_diff) - std::exp(log_phi(u) - log_diff));
  return {log_mass, mean};
}

void check_probabilities(double p0, double p1) {
  if (!(p0 >= 0.0 && p0 <= 1.0) || !(p1 >= 0.0 && p1 <= 1.0) || std::abs(p0 + p1 - 1.0) > 1e-12) {
    throw ConfigError("factor", "p0 and p1 must be probabilities summing to 1");
  }
}

}  // namespace

BinaryBondSpec BinaryBondSpec::make(double p0, double p1) {
  check_probabilities(p0, p1);
  return {p0, p1};
}

RecoveryBondSpec RecoveryBondSpec::make(double p0, double p1, double a, double b, double c) {
  check_probabilities(p0, p1);
  if (!(0.0 <= a && a < b && b <= c) || !std::isfinite(c)) {
    throw ConfigError("factor", "recovery bond requires 0 <= a < b <= c");
  }
  return {p0, p1, a, b, c};
}

LogNormalSpec LogNormalSpec::make(double mu, double nu, double q) {
  if (!std::isfinite(mu) || !std::isfinite(q)) throw ConfigError("factor", "mu, q must be finite");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("factor.nu", "must be positive");
  return {mu, nu, q};
}

ExponentialSpec ExponentialSpec::make(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("factor.lambda", "must be positive");
  }
  return {lambda};
}

double binary_bond_price(const BinaryBondSpec& spec, const MarketState& state) {
  const MarketState s = normalize(state).state;
  const double disc = s.discount();
  if (spec.p1 == 0.0) return 0.0;
  if (spec.p0 == 0.0) return disc;
  const double a = log_kernel(1.0, s);
  return disc * logistic(std::log(spec.p1) - std::log(spec.p0) + a);
}

double recovery_bond_price(const RecoveryBondSpec& spec, const MarketState& state) {
  const MarketState s = normalize(state).state;
  const double disc = s.discount();
  if (spec.p0 == 0.0) return disc * spec.c;

  // On [a, b] with x = a + w y the log-kernel is log k(a) + A y - B y^2.
  const auto [alpha, beta] = kernel_quadratic(s);
  const double w = spec.b - spec.a;
  const UnitTilt band = unit_interval_tilt((alpha - beta * spec.a) * w, 0.5 * beta * w * w);
  const double band_mean = spec.a + w * band.mean;
  if (spec.p1 == 0.0) return disc * band_mean;

  // Uniform density p0 / w times w dy leaves p0.
  const double log_band = std::log(spec.p0) + log_kernel(spec.a, s) + band.log_mass;
  const double log_atom = std::log(spec.p1) + log_kernel(spec.c, s);
  const double band_share = logistic(log_band - log_atom);
  return disc * (band_share * band_mean + (1.0 - band_share) * spec.c);
}

double log_gaussian_tilt_integral(double q, const LogNormalSpec& spec, const MarketState& state) {
  const MarketState s = normalize(state).state;
  const double b = s.bridge;
  const double nu2 = spec.nu * spec.nu;
  const double a_t = (1.0 - b + nu2 * s.sigma * s.sigma * b) / (nu2 * (1.0 - b));
  const double b_t = q + spec.mu / nu2 + s.sigma * s.xi / (1.0 - b);
  const double c = 0.5 * spec.mu * spec.mu / nu2;
  return -std::log(spec.nu) - 0.5 * std::log(a_t) + 0.5 * b_t * b_t / a_t - c;
}

double gaussian_tilt_integral(double q, const LogNormalSpec& spec, const MarketState& state) {
  return std::exp(log_gaussian_tilt_integral(q, spec, state));
}

double power_payoff_price(const LogNormalSpec& spec, const MarketState& state) {
  const MarketState s = normalize(state).state;
  const double b = s.bridge;
  const double q = spec.q;
  const double nu2 = spec.nu * spec.nu;
  const double tilt = nu2 * s.sigma * s.sigma * b;
  const double denom = 1.0 - b + tilt;
  const double k = tilt / denom;
  // K q xi / (sigma b) == q nu^2 sigma xi / denom, regular at b = 0.
  const double prior_log_moment = q * spec.mu + 0.5 * q * q * nu2;
  const double log_c0 = -s.r * s.T + prior_log_moment;
  return std::exp(s.r * s.t + log_c0 + q * nu2 * s.sigma * s.xi / denom - k * prior_log_moment);
}

double power_payoff_price_tilt_ratio(const LogNormalSpec& spec, const MarketState& state) {
  const MarketState s = normalize(state).state;
  return s.discount() * std::exp(log_gaussian_tilt_integral(spec.q, spec, s) -
                                 log_gaussian_tilt_integral(0.0, spec, s));
}

double lognormal_price(const LogNormalSpec& spec, const MarketState& state) {
  return power_payoff_price({spec.mu, spec.nu, 1.0}, state);
}

double lognormal_price_tilt_ratio(const LogNormalSpec& spec, const MarketState& state) {
  return power_payoff_price_tilt_ratio({spec.mu, spec.nu, 1.0}, state);
}

double exponential_payoff_price(const ExponentialSpec& spec, const MarketState& state) {
  const MarketState s = normalize(state).state;
  const auto [alpha, beta] = kernel_quadratic(s);
  const double kappa = alpha - spec.lambda;
  if (kappa < 0.0 && kappa * kappa >= 4.0 * beta) {
    // Posterior mode at or below -2 standard deviations: the truncated mean
    // mu + nu H(-mu/nu) cancels, so use the continued fraction directly.
    return s.discount() * decaying_half_line(-kappa, beta).mean;
  }
  if (beta == 0.0) throw IntegrabilityError("tilted exponential prior is not integrable");
  const double nu = 1.0 / std::sqrt(beta);
  const double mu = kappa / beta;
  // Mean of Normal(mu, nu^2) truncated to [0, inf).
  return s.discount() * (mu + nu * normal_hazard(-mu / nu));
}

std::optional<ClosedFormPricer> match_closed_form(const MarketFactorDistribution& dist,
                                                  const Payoff& payoff) {
  const auto& parts = dist.parts();
  if (payoff.kind() == Payoff::Kind::kIdentity) {
    if (parts.size() == 2) {
      const auto* a0 = std::get_if<component::Atom>(&parts[0].component);
      const auto* a1 = std::get_if<component::Atom>(&parts[1].component);
      if (a0 && a1 && ((a0->x == 0.0 && a1->x == 1.0) || (a0->x == 1.0 && a1->x == 0.0))) {
        const double p1 = a0->x == 1.0 ? parts[0].weight : parts[1].weight;
        const auto spec = BinaryBondSpec::make(1.0 - p1, p1);
        return ClosedFormPricer{
            "binary_bond", [spec](const MarketState& s) { return binary_bond_price(spec, s); }};
      }
      for (int i = 0; i < 2; ++i) {
        const auto* u = std::get_if<component::Uniform>(&parts[i].component);
        const auto* c = std::get_if<component::Atom>(&parts[1 - i].component);
        if (u && c && u->a >= 0.0 && u->b <= c->x) {
          const auto spec =
              RecoveryBondSpec::make(parts[i].weight, parts[1 - i].weight, u->a, u->b, c->x);
          return ClosedFormPricer{"recovery_bond", [spec](const MarketState& s) {
                                    return recovery_bond_price(spec, s);
                                  }};
        }
      }
    }
    if (parts.size() == 1) {
      if (const auto* e = std::get_if<component::Exponential>(&parts[0].component)) {
        const auto spec = ExponentialSpec::make(e->lambda);
        return ClosedFormPricer{"exponential", [spec](const MarketState& s) {
                                  return exponential_payoff_price(spec, s);
                                }};
      }
    }
  }
  if (payoff.kind() == Payoff::Kind::kExponentialScale && parts.size() == 1) {
    if (const auto* n = std::get_if<component::Normal>(&parts[0].component)) {
      const auto spec = LogNormalSpec::make(n->mu, n->nu, payoff.parameter());
      return ClosedFormPricer{spec.q == 1.0 ? "lognormal" : "power_payoff",
                              [spec](const MarketState& s) { return power_payoff_price(spec, s); }};
    }
  }
  return std::nullopt;
}

}  // namespace vgip

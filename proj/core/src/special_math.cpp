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

#include "vgip/special_math.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vgip/errors.hpp"

namespace vgip {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
}

double e1_series(double z) {
  // E1(z) = -gamma - ln z - sum_{k>=1} (-z)^k / (k k!)
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -z / k;
    const double contrib = term / k;
    sum += contrib;
    if (std::abs(contrib) < kEps * std::abs(sum) * 0.25) break;
  }
  return -std::numbers::egamma - std::log(z) - sum;
}

double e1_continued_fraction(double z) {
  // Modified Lentz on E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))).
  constexpr double kTiny = 1e-300;
  double b = z + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h * std::exp(-z);
}

}  // namespace

LevyInterval LevyInterval::make(double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw DomainError("LevyInterval requires 0 < lo < hi < inf");
  }
  return {lo, hi};
}

GammaParams GammaParams::standard(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("gamma shape m must be positive");
  return {m, 1.0 / m};
}

double exp_integral_e1(double z) {
  if (!(z > 0.0)) throw DomainError("exp_integral_e1 requires z > 0");
  if (std::isinf(z)) return 0.0;
  return z <= 1.0 ? e1_series(z) : e1_continued_fraction(z);
}

double levy_measure_interval(double m, const LevyInterval& iv) {
  if (!(m > 0.0)) throw DomainError("levy_measure_interval requires m > 0");
  const LevyInterval checked = LevyInterval::make(iv.lo, iv.hi);
  return m * (exp_integral_e1(m * checked.lo) - exp_integral_e1(m * checked.hi));
}

double levy_ratio(double m, const LevyInterval& ab, const LevyInterval& cd) {
  return levy_measure_interval(m, ab) / levy_measure_interval(m, cd);
}

double gamma_levy_exponent(double alpha, const GammaParams& p) {
  if (!(p.m > 0.0) || !(p.kappa > 0.0)) throw DomainError("gamma params must be positive");
  require_finite(alpha, "alpha");
  if (p.kappa * alpha >= 1.0) throw DomainError("gamma_levy_exponent requires alpha < 1/kappa");
  return -p.m * std::log1p(-p.kappa * alpha);
}

double vg_levy_exponent(double alpha, double m) {
  if (!(m > 0.0)) throw DomainError("vg_levy_exponent requires m > 0");
  require_finite(alpha, "alpha");
  const double u = alpha * alpha / (2.0 * m);
  if (u >= 1.0) throw DomainError("vg_levy_exponent requires alpha^2 < 2m");
  return -m * std::log1p(-u);
}

double pochhammer(double x, unsigned n) {
  double out = 1.0;
  for (unsigned k = 0; k < n; ++k) out *= x + k;
  return out;
}

double subordinator_moment(unsigned n, const GammaParams& p, double t) {
  if (!(p.m > 0.0) || !(p.kappa > 0.0)) throw DomainError("gamma params must be positive");
  if (!(t >= 0.0)) throw DomainError("subordinator_moment requires t >= 0");
  return std::pow(p.kappa, static_cast<double>(n)) * pochhammer(p.m * t, n);
}

BridgeMoments bridge_moments(double m, double t, double T) {
  if (!(m > 0.0)) throw DomainError("bridge_moments requires m > 0");
  if (!(T > 0.0) || !(t >= 0.0) || !(t <= T)) {
    throw DomainError("bridge_moments requires 0 <= t <= T, T > 0");
  }
  return {t / T, t * (T - t) / (T * T * (1.0 + m * T))};
}

double vg_bridge_variance(double m, double t, double T) {
  if (!(m > 0.0)) throw DomainError("vg_bridge_variance requires m > 0");
  if (!(T > 0.0) || !(t >= 0.0) || !(t <= T)) {
    throw DomainError("vg_bridge_variance requires 0 <= t <= T, T > 0");
  }
  return m * t * (T - t) / (T * (1.0 + m * T));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_pdf_general(double x, double mu, double nu) {
  if (!(nu > 0.0)) throw DomainError("normal density requires nu > 0");
  return normal_pdf((x - mu) / nu) / nu;
}

double normal_cdf_general(double x, double mu, double nu) {
  if (!(nu > 0.0)) throw DomainError("N0 requires nu > 0");
  return normal_cdf((x - mu) / nu);
}

double incomplete_first_moment(double x, double mu, double nu) {
  if (!(nu > 0.0)) throw DomainError("N1 requires nu > 0");
  if (x == std::numeric_limits<double>::infinity()) return mu;
  if (x == -std::numeric_limits<double>::infinity()) return 0.0;
  const double z = (x - mu) / nu;
  return mu * normal_cdf(z) - nu * normal_pdf(z);
}

double erfcx(double x) {
  if (x < 26.0) {
    // exp(x^2) evaluated as exp(hi) * exp(lo) with x^2 = hi + lo exactly.
    const double hi = x * x;
    const double lo = std::fma(x, x, -hi);
    return std::exp(hi) * std::exp(lo) * std::erfc(x);
  }
  // Asymptotic series; at x >= 26 the terms shrink below 1e-17 by k = 8.
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= -(2.0 * k - 1.0) * inv2x2;
    sum += term;
  }
  return sum / (x * std::sqrt(std::numbers::pi));
}

double log_normal_cdf(double z) {
  if (std::isnan(z)) return z;
  if (z >= 0.0) return std::log1p(-0.5 * std::erfc(z * kInvSqrt2));
  return std::log(0.5 * erfcx(-z * kInvSqrt2)) - 0.5 * z * z;
}

double log1mexp(double d) {
  if (d > 0.0) throw DomainError("log1mexp requires d <= 0");
  return d > -std::numbers::ln2 ? std::log(-std::expm1(d)) : std::log1p(-std::exp(d));
}

double log_normal_cdf_diff(double za, double zb) {
  if (!(za < zb)) throw DomainError("log_normal_cdf_diff requires za < zb");
  if (zb <= 0.0) {
    const double lb = log_normal_cdf(zb);
    return lb + log1mexp(log_normal_cdf(za) - lb);
  }
  if (za >= 0.0) {
    // Upper tails: Q(za) - Q(zb) with Q(z) = N(-z).
    const double la = log_normal_cdf(-za);
    return la + log1mexp(log_normal_cdf(-zb) - la);
  }
  return std::log1p(-(normal_cdf(za) + normal_cdf(-zb)));
}

double normal_hazard(double z) { return std::sqrt(2.0 / std::numbers::pi) / erfcx(z * kInvSqrt2); }

}  // namespace vgip

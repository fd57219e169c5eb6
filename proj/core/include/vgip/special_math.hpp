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

// Special functions and closed-form analytics for standard gamma
// subordinators, gamma bridges and normalized variance-gamma bridges.
//
// All functions are pure and reentrant.

#ifndef VGIP_SPECIAL_MATH_HPP_
#define VGIP_SPECIAL_MATH_HPP_

namespace vgip {

/// A jump-size interval [lo, hi] with 0 < lo < hi < inf.
struct LevyInterval {
  double lo;
  double hi;

  /// Throws DomainError unless 0 < lo < hi and both are finite.
  static LevyInterval make(double lo, double hi);
};

/// Gamma process with shape rate `m` (per unit time) and scale `kappa`.
struct GammaParams {
  double m;
  double kappa;

  /// kappa = 1/m, so that E[gamma_t] = t.
  static GammaParams standard(double m);
  bool is_standard() const noexcept { return kappa * m == 1.0; }
};

/// Exponential integral E1(z) = int_z^inf e^{-x}/x dx for z > 0.
///
/// Power series for z <= 1, modified Lentz continued fraction above.
/// Relative error below 1e-12 over the whole positive axis.
double exp_integral_e1(double z);

/// Levy measure of [lo, hi] for a standard gamma subordinator with
/// parameter m: m * (E1(m lo) - E1(m hi)).
double levy_measure_interval(double m, const LevyInterval& iv);

/// nu_m[ab] / nu_m[cd].  For cd a right shift of ab of equal length the
/// ratio exceeds one and increases with m.
double levy_ratio(double m, const LevyInterval& ab, const LevyInterval& cd);

/// Levy exponent of the gamma process: -m log(1 - kappa alpha).
/// Requires alpha < 1/kappa.
double gamma_levy_exponent(double alpha, const GammaParams& p);

/// Levy exponent of the standard variance-gamma process W_{gamma_t}:
/// -m log(1 - alpha^2 / (2m)).  Requires alpha^2 < 2m.
double vg_levy_exponent(double alpha, double m);

/// Rising factorial (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1.
double pochhammer(double x, unsigned n);

/// E[Gamma_t^n] = kappa^n (m t)_n.
double subordinator_moment(unsigned n, const GammaParams& p, double t);

struct BridgeMoments {
  double mean;
  double variance;
};

/// Mean t/T and variance t(T-t) / (T^2 (1 + mT)) of the gamma bridge
/// gamma_{tT}.  Requires 0 <= t <= T and T > 0.
BridgeMoments bridge_moments(double m, double t, double T);

/// Var[Gamma_{tT}] = m t (T-t) / (T (1 + mT)).
double vg_bridge_variance(double m, double t, double T);

// Normal distribution helpers ------------------------------------------------

/// Standard normal CDF, absolute error below 1e-15.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Density of Normal(mu, nu^2) at x.  Requires nu > 0.
double normal_pdf_general(double x, double mu, double nu);

/// N0(x, mu, nu) = N((x - mu) / nu).  Requires nu > 0.
double normal_cdf_general(double x, double mu, double nu);

/// Incomplete first moment
///   N1(x, mu, nu) = int_{-inf}^x y phi_{mu,nu}(y) dy
///                 = mu N((x-mu)/nu) - nu phi((x-mu)/nu).
/// x may be +-inf.  Requires nu > 0.
double incomplete_first_moment(double x, double mu, double nu);

/// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

/// log N(z), accurate far into the lower tail.
double log_normal_cdf(double z);

/// log(N(zb) - N(za)) for za < zb, without cancellation in either tail.
double log_normal_cdf_diff(double za, double zb);

/// phi(z) / (1 - N(z)), the normal hazard (inverse Mills ratio).
double normal_hazard(double z);

/// log(1 - exp(d)) for d <= 0.
double log1mexp(double d);

}  // namespace vgip

#endif  // VGIP_SPECIAL_MATH_HPP_

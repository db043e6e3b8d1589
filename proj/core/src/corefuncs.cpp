// Copyright 2026 The polaron2d Authors
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

#include "polaron2d/corefuncs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "polaron2d/errors.hpp"
#include "polaron2d/quadrature.hpp"

namespace polaron2d {

namespace {

[[noreturn]] void domain_fail(const char* what, double value) {
  std::ostringstream msg;
  msg << what << " (got " << value << ")";
  throw DomainError(msg.str());
}

void require_mass(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) domain_fail("mass ratio must be positive and finite", m);
}

}  // namespace

void ModelParams::validate() const {
  require_mass(mass_ratio);
  if (!(binding_energy < 0.0) || !std::isfinite(binding_energy)) {
    domain_fail("binding energy must be negative and finite", binding_energy);
  }
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) domain_fail("rel_tol must be positive", rel_tol);
  if (!(abs_tol > 0.0)) domain_fail("abs_tol must be positive", abs_tol);
  if (max_subdivisions < 1) domain_fail("max_subdivisions must be >= 1", max_subdivisions);
}

void KernelPoint::validate() const {
  if (!(u >= 0.0 && u <= 1.0)) domain_fail("u must lie in [0, 1]", u);
  if (!(tau >= 0.0)) domain_fail("tau must be nonnegative", tau);
  if (!(psq >= 0.0)) domain_fail("p^2 must be nonnegative", psq);
  if (!(mu < 0.0)) domain_fail("mu must be negative", mu);
  if (!(lambda > 0.0)) domain_fail("lambda must be positive", lambda);
}

double beta_kink(double mass_ratio) {
  require_mass(mass_ratio);
  return 1.0 / (mass_ratio + 1.0);
}

double beta_coefficient(double u, const ModelParams& params) {
  const double m = params.mass_ratio;
  require_mass(m);
  if (!(u >= 0.0 && u <= 1.0)) domain_fail("beta: u must lie in [0, 1]", u);
  // The ratio crosses 1 exactly at u = 1/(M+1); pin the flat branch so it is
  // exactly 1 there instead of 1 +- ulp.
  if (u <= 1.0 / (m + 1.0)) return 1.0;
  const double ratio = (m + 1.0 - u) * (m + 2.0) / (m * m + 3.0 * m + 1.0 - u);
  return std::min(1.0, ratio);
}

double alpha_of_mass(double mass_ratio, const QuadratureSpec& quad) {
  require_mass(mass_ratio);
  quad.validate();
  const ModelParams params{mass_ratio, -1.0};
  const double m = mass_ratio;
  auto integrand = [&](double u) { return 1.0 / (beta_coefficient(u, params) * (m + 1.0 - u)); };
  const double kink = beta_kink(m);
  const std::array<double, 1> cut{kink};
  const QuadResult r = integrate(integrand, 0.0, 1.0, quad, cut);
  return 0.5 / (m + 1.0) + 0.5 * r.value;
}

double subcritical_margin(double mass_ratio, double alpha_m) {
  return mass_ratio / (mass_ratio + 1.0) - alpha_m;
}

double coupling_alpha(const ModelParams& params) {
  params.validate();
  const double m = params.mass_ratio;
  return -(std::numbers::pi / (1.0 + 1.0 / m)) * std::log(std::abs(params.binding_energy));
}

namespace {

void require_energy_args(double mu, double lambda, const ModelParams& params) {
  params.validate();
  if (!(mu < 0.0)) domain_fail("mu must be negative", mu);
  if (!(lambda > 0.0)) domain_fail("lambda must be positive", lambda);
}

}  // namespace

double bound_equation_lhs(double mu, double lambda, const ModelParams& params, double alpha_m) {
  require_energy_args(mu, lambda, params);
  const double m = params.mass_ratio;
  const double eb = params.binding_energy;
  // E_B (1/mu - 1/lambda) = E_B/mu + |E_B|/lambda, a sum of positives.
  const double ir_arg = eb / mu - eb / lambda;
  return (m / (m + 1.0) - alpha_m) * std::log(mu / eb) - std::sqrt(lambda / -mu) -
         std::sqrt(lambda / (lambda - mu)) - alpha_m * std::log(ir_arg) - alpha_m;
}

double bound_equation_lhs_rearranged(double mu, double lambda, const ModelParams& params,
                                     double alpha_m) {
  require_energy_args(mu, lambda, params);
  const double m = params.mass_ratio;
  return (m / (m + 1.0)) * std::log(mu / params.binding_energy) - std::sqrt(lambda / -mu) -
         std::sqrt(lambda / (lambda - mu)) - alpha_m * std::log1p(-mu / lambda) - alpha_m;
}

double gamma_equation_lhs(double gamma, double mass_ratio, double alpha_m) {
  require_mass(mass_ratio);
  if (!(gamma > 0.0)) domain_fail("gamma must be positive", gamma);
  const double m = mass_ratio;
  return (m / (m + 1.0) - alpha_m) * std::log(gamma) - 1.0 / std::sqrt(gamma) -
         1.0 / std::sqrt(1.0 + gamma) - alpha_m * std::log1p(1.0 / gamma) - alpha_m;
}

double kernel_offset(const KernelPoint& k, const ModelParams& params) {
  k.validate();
  const double m = params.mass_ratio;
  require_mass(m);
  return m * (k.tau + beta_coefficient(k.u, params) * k.psq - k.mu) / (m + 1.0 - k.u);
}

double radial_kernel(double qsq, const KernelPoint& k, const ModelParams& params) {
  if (!(qsq >= 0.0)) domain_fail("q^2 must be nonnegative", qsq);
  const double a = kernel_offset(k, params);
  const double w = params.mass_ratio + 1.0 - k.u;
  return 1.0 / (2.0 * w * w * (qsq + a));
}

double infrared_weight(double qsq, double lambda) {
  if (!(qsq >= 0.0)) domain_fail("q^2 must be nonnegative", qsq);
  if (!(lambda > 0.0)) domain_fail("lambda must be positive", lambda);
  return qsq <= lambda ? 1.0 / lambda : 1.0 / qsq;
}

double weighted_kernel_integral(const KernelPoint& k, const ModelParams& params) {
  const double a = kernel_offset(k, params);
  const double w = params.mass_ratio + 1.0 - k.u;
  const double x = a / k.lambda;
  // Both logarithms go through log1p: x may be tiny or huge.
  const double bracket = x * std::log1p(1.0 / x) + std::log1p(x);
  return std::numbers::pi / (2.0 * w * w * a) * bracket;
}

}  // namespace polaron2d

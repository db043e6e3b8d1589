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

// Randomized checks of the scalar identities and inequalities behind the
// lower bound. Every check compares two independently coded evaluation paths
// (quadrature against closed form, difference quotient against integral).
//
// Sampling boxes: |p|, |q|, |P|, |v| in [0, 10]; B in [0, 100]; u in [0, 1];
// M in [0.2, 50] (M in [1.3, 50] where a subcritical mass is required);
// tau, p^2 in [0, 100]; mu in [-100, -0.01]; lambda in [0.01, 100].
// Sample i draws from splitmix64(seed ^ i), so reports do not depend on the
// thread count.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polaron2d/types.hpp"

namespace polaron2d {

enum class CaseKind {
  kIdentity,    // violation = relative discrepancy >= 0
  kInequality,  // violation = signed relative margin; > 0 means violated
};

using Record = std::vector<std::pair<std::string, double>>;

struct CaseResult {
  std::string name;
  CaseKind kind = CaseKind::kIdentity;
  long samples_run = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  Record worst_input;
  bool passed = false;
  long slack_warnings = 0;  // inequality hits within the tolerance slack
};

struct VerificationReport {
  std::vector<CaseResult> cases;
  bool suite_passed = false;
};

enum class Suite { kAll, kIntegrals, kInequalities, kMonotonicity, kChain };

std::optional<Suite> parse_suite(std::string_view name);
std::string_view suite_name(Suite suite);

struct VerifyOptions {
  long samples = 1000;
  std::uint64_t seed = 7;
  unsigned threads = 0;
  /// Replaces every case's default tolerance when set.
  std::optional<double> tolerance;
  /// Sample cap for cases that need a two-dimensional cubature per sample.
  long cubature_cap = 1000;
  QuadratureSpec quad{1e-13, 1e-300, 4000};
};

// Individual evaluation paths, exposed for tests.

/// pi * int_lambda^inf ds / (s - mu)^2 by quadrature (closed form pi/(lambda-mu)).
double resolvent_radial_integral(double lambda, double mu, const QuadratureSpec& quad);

/// Area of the disk q^2 <= lambda by cubature (closed form pi*lambda).
double disk_area_cubature(double lambda, const QuadratureSpec& quad);

struct SigmaMinusForms {
  double difference;  // (sigma(-p,q) - sigma(p,q)) / 2
  double integral;    // M p.q int_{-1}^{1} du / [(M+1)(p^2+q^2) - 2u p.q + B]^2, by quadrature
  double closed;      // same integral via its antiderivative
};
SigmaMinusForms sigma_minus_forms(Vec2 p, Vec2 q, double b, double mass_ratio,
                                  const QuadratureSpec& quad);

struct UIntegralChain {
  double lhs;     // full u-integral over [-1, 1]
  double middle;  // u-free term + integral over [0, 1] with -2u|p'.q'|
  double final;   // after p'^2 + q'^2 >= 2|p'.q'| and B >= 0
};
UIntegralChain u_integral_chain(Vec2 p_shifted, Vec2 q_shifted, double qsq, double b,
                                double mass_ratio, const QuadratureSpec& quad);

struct MassInequality {
  double left;    // (M+1-u) p'^2 + M/(M+2) P^2
  double middle;  // M (M+1-u)(M+2) / (M^2+3M+1-u) p^2
  double right;   // M beta(u) p^2
  double left_at_minimizer;  // left with P replaced by the minimizing P*
};
MassInequality mass_inequality(Vec2 p, Vec2 big_p, double u, double mass_ratio);

/// int_{q^2 > lambda} f~(|q + v|^2, k) / q^2 dq by polar cubature.
double rearranged_lhs_cubature(Vec2 v, const KernelPoint& k, const ModelParams& params,
                               const QuadratureSpec& quad);

/// pi [ (1/lambda) int_0^lambda f~(s) ds + int_lambda^inf f~(s)/s ds ] by quadrature.
double weighted_kernel_radial(const KernelPoint& k, const ModelParams& params,
                              const QuadratureSpec& quad);

/// The lower bound for phi(mu) before minimizing over the spectral value tau
/// (with P_f^2 -> 0):
///   pi/(1+1/M) log((tau - mu)/-E_B) - pi sqrt(lambda/-mu) - pi sqrt(lambda/(lambda-mu))
///     - pi alpha (1 + log(1 + (tau - mu)/lambda)).
double chain_pre_minimization(double tau, double mu, double lambda, const ModelParams& params,
                              double alpha_m);

// Sampled cases.

CaseResult verify_resolvent_integral(const VerifyOptions& opts);
CaseResult verify_disk_area(const VerifyOptions& opts);
CaseResult verify_sigma_minus(const VerifyOptions& opts);
CaseResult verify_weighted_kernel_closed_form(const VerifyOptions& opts);
CaseResult verify_u_integral_bound(const VerifyOptions& opts);
CaseResult verify_mass_inequalities(const VerifyOptions& opts);
CaseResult verify_mass_inequality_sharpness(const VerifyOptions& opts);
CaseResult verify_rearrangement(const VerifyOptions& opts);
CaseResult verify_kernel_offset_bound(const VerifyOptions& opts);
CaseResult verify_bound_equation_decreasing(const VerifyOptions& opts);
CaseResult verify_alpha_decreasing(const VerifyOptions& opts);
CaseResult verify_beta_kink(const VerifyOptions& opts);
CaseResult verify_bound_equation_forms(const VerifyOptions& opts);
CaseResult verify_chain_equality(const VerifyOptions& opts);
CaseResult verify_chain_inequality(const VerifyOptions& opts);

VerificationReport run_suite(Suite suite, const VerifyOptions& opts);

}  // namespace polaron2d

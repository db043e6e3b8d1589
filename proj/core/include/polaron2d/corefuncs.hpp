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

// Scalar functions entering the N-independent lower bound and the kernel
// estimates behind it. Everything here is a pure function.

#pragma once

#include "polaron2d/types.hpp"

namespace polaron2d {

/// Interpolation coefficient
///
///   beta(u) = min{ 1, (M+1-u)(M+2) / (M^2+3M+1-u) },   0 <= u <= 1.
///
/// Equal to 1 exactly for u <= 1/(M+1) and strictly below 1 afterwards.
double beta_coefficient(double u, const ModelParams& params);

/// The point u* = 1/(M+1) where the two branches of beta_coefficient meet.
double beta_kink(double mass_ratio);

/// Mass constant
///
///   alpha(M) = 1/(2(M+1)) + 1/2 * int_0^1 du / (beta(u)(M+1-u)),
///
/// integrated adaptively on [0, u*] and [u*, 1].
double alpha_of_mass(double mass_ratio, const QuadratureSpec& quad = {});

/// M/(M+1) - alpha(M); the bound exists iff this is positive.
double subcritical_margin(double mass_ratio, double alpha_m);

/// Coupling constant -(pi/(1+1/M)) log|E_B|.
double coupling_alpha(const ModelParams& params);

/// Left side of the bound equation whose root mu is the energy bound:
///
///   (M/(M+1) - alpha) log(mu/E_B) - sqrt(lambda/-mu) - sqrt(lambda/(lambda-mu))
///       - alpha log(E_B (1/mu - 1/lambda)) - alpha.
///
/// `alpha_m` is alpha_of_mass(M), passed in so root finders do not repeat the
/// quadrature. Throws DomainError unless mu < 0 and lambda > 0.
double bound_equation_lhs(double mu, double lambda, const ModelParams& params, double alpha_m);

/// The same quantity in the rearranged form
///
///   M/(M+1) log(mu/E_B) - sqrt(lambda/-mu) - sqrt(lambda/(lambda-mu))
///       - alpha log(1 - mu/lambda) - alpha,
///
/// from which negativity on E_B <= mu < 0 is evident.
double bound_equation_lhs_rearranged(double mu, double lambda, const ModelParams& params,
                                     double alpha_m);

/// Left side of the dimensionless equation for gamma = mu/E_B at lambda = -E_B.
double gamma_equation_lhs(double gamma, double mass_ratio, double alpha_m);

/// A(u) = M (tau + beta(u) p^2 - mu) / (M+1-u).
double kernel_offset(const KernelPoint& k, const ModelParams& params);

/// f~(q, u) = 1 / (2 (M+1-u)^2 (q^2 + A(u))).
double radial_kernel(double qsq, const KernelPoint& k, const ModelParams& params);

/// Symmetric decreasing infrared weight: 1/lambda inside the ball q^2 <= lambda,
/// 1/q^2 outside.
double infrared_weight(double qsq, double lambda);

/// Closed form of int_{R^2} infrared_weight(q^2) radial_kernel(q^2) dq:
///
///   pi / (2 (M+1-u)^2 A) * ( (A/lambda) log(1 + lambda/A) + log(1 + A/lambda) ).
double weighted_kernel_integral(const KernelPoint& k, const ModelParams& params);

}  // namespace polaron2d

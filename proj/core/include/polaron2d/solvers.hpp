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

#pragma once

#include <variant>
#include <vector>

#include "polaron2d/types.hpp"

namespace polaron2d {

struct RootFindSpec {
  double x_tol = 1e-12;  // absolute, on the root
  double f_tol = 1e-10;  // on the residual
  int max_iter = 200;
  double bracket_growth = 2.0;

  void validate() const;
};

/// Infrared cutoff fixed by the caller.
struct FixedCutoff {
  double lambda = 1.0;
};

/// lambda = -E_B, which turns the bound equation into the gamma equation.
struct BindingScaleCutoff {};

/// Maximize the bound over lambda in [lambda_min, lambda_max].
struct OptimizedCutoff {
  double lambda_min = 1e-3;
  double lambda_max = 1e3;
};

using CutoffChoice = std::variant<FixedCutoff, BindingScaleCutoff, OptimizedCutoff>;

struct BoundResult {
  double mu = 0.0;  // the lower bound on the ground-state energy
  double lambda_used = 0.0;
  double gamma = 0.0;  // mu / E_B
  double alpha_m = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool optimized = false;
};

struct CriticalMass {
  double m_star = 0.0;
  double alpha_at_m_star = 0.0;
  double residual = 0.0;  // alpha(M*) - M*/(M*+1)
  int iterations = 0;
};

/// Solves the bound equation for mu < E_B at fixed lambda.
///
/// The bracket's right end is E_B (1 + 1e-9), where the left side is negative;
/// the left end is E_B * growth^k for the first k where it turns positive.
/// Throws SupercriticalMass, BracketFailure or NonConvergence.
BoundResult solve_mu(const ModelParams& params, double lambda, double alpha_m,
                     const RootFindSpec& spec = {});

/// As above, computing alpha(M) first.
BoundResult solve_mu(const ModelParams& params, double lambda, const RootFindSpec& spec = {});

/// The M-only ratio gamma_M > 1 with H_N >= gamma_M E_B.
double solve_gamma(double mass_ratio, double alpha_m, const RootFindSpec& spec = {});
double solve_gamma(double mass_ratio, const RootFindSpec& spec = {});

/// Root of alpha(M) = M/(M+1) in [m_lo, m_hi]. The sign of the difference is
/// checked for monotonicity on a sample grid across the bracket first.
CriticalMass critical_mass(const RootFindSpec& spec = {}, double m_lo = 1.0, double m_hi = 1.5);

/// Golden-section maximization of mu(lambda) in log lambda.
/// Throws RangeError if the maximizer sits at either end of the range.
BoundResult optimize_lambda(const ModelParams& params, const OptimizedCutoff& range, double alpha_m,
                            const RootFindSpec& spec = {});

/// Dispatches on the cutoff choice.
BoundResult compute_bound(const ModelParams& params, const CutoffChoice& cutoff, double alpha_m,
                          const RootFindSpec& spec = {});

/// Default optimization range [1e-3, 1e3] * |E_B|.
OptimizedCutoff default_cutoff_range(const ModelParams& params);

}  // namespace polaron2d

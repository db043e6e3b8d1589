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

// Numerical estimate of the weighted Schur-test constant
//
//   C = sup_{p, Q, tau > 0}  w(tau + p^2) * int_{q^2 > lambda} dq  w(tau + q^2) / q^2
//         * (2/M)|p'.q'| / ( D^2 - (4/M^2)(p'.q')^2 ),
//
//   w(s) = sqrt( (s - mu) / log(1 + (s - mu)/lambda) ),
//   p' = p + Q/(M+2),  q' = q + Q/(M+2),
//   D  = (1 + 1/M)(p'^2 + q'^2) + Q^2/(M+2) + tau - mu,
//
// and its comparison against pi/(1 + 1/M). A ratio below one would extend the
// lower bound to that mass ratio.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polaron2d/types.hpp"

namespace polaron2d {

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  bool log_spaced = false;

  std::vector<double> points() const;
  /// Distance between neighbouring points (in log space for log grids).
  double spacing() const;
};

struct CSearchConfig {
  double mu = -1.0;
  double lambda = 1.0;
  double q_mag_max = 1e3;
  GridSpec tau_grid{1e-3, 1e3, 7, true};
  GridSpec qmag_grid{0.0, 3.0, 4, false};
  GridSpec ppar_grid{-3.0, 3.0, 7, false};
  GridSpec pperp_grid{0.0, 3.0, 4, false};
  int refine_iters = 3;
  int restarts = 5;
  int simplex_max_evals = 80;
  /// Largest accepted ratio of the certified tail bound to the inner integral.
  double max_tail_rel = 1e-2;
  /// Relative spread allowed between the final two refinement levels.
  double stability_tol = 0.02;
  QuadratureSpec quad{1e-9, 1e-300, 2000};

  void validate() const;

  static CSearchConfig coarse();
  static CSearchConfig fine();
};

struct InnerIntegral {
  double value = 0.0;
  double abs_error = 0.0;
  double tail_bound = 0.0;  // certified bound on the part beyond |q| = q_mag_max
};

struct CArgmax {
  double q_mag = 0.0;
  double p_par = 0.0;
  double p_perp = 0.0;
  double tau = 0.0;
};

struct CEstimate {
  double mass_ratio = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double value = 0.0;
  CArgmax argmax;
  double prefactor = 0.0;  // pi / (1 + 1/M)
  double ratio = 0.0;      // value / prefactor
  std::vector<std::pair<int, double>> refinement_trace;  // (level, running max)
  double truncation_error_bound = 0.0;
  bool boundary_maximizer = false;
  std::vector<std::string> boundary_coordinates;
  bool stable = false;  // final two trace levels within stability_tol
  long evaluations = 0;
};

struct CScanRow {
  double mass_ratio = 0.0;
  std::optional<CEstimate> estimate;
  std::string error;
};

/// w(s) = sqrt((s - mu) / log(1 + (s - mu)/lambda)) for s >= 0.
double c_weight(double s, double mu, double lambda);

/// Integrand of the q-integral at q^2 > lambda (throws DomainError otherwise),
/// including the factor w(tau + q^2) / q^2.
double c_integrand(Vec2 p, Vec2 q, Vec2 big_q, double tau, const CSearchConfig& cfg,
                   const ModelParams& params);

/// int_{lambda < q^2 <= q_mag_max^2} c_integrand dq in polar coordinates
/// (angle first, then log q^2), with a certified bound on the discarded tail.
/// Throws TailBoundExceeded if tail_bound > max_tail_rel * value.
InnerIntegral inner_integral(Vec2 p, Vec2 big_q, double tau, const CSearchConfig& cfg,
                             const ModelParams& params);

/// w(tau + p^2) * inner_integral; the quantity whose supremum is C.
double c_objective(Vec2 p, Vec2 big_q, double tau, const CSearchConfig& cfg,
                   const ModelParams& params, double* tail_bound = nullptr);

/// Supremum over the reduced box Q = (|Q|, 0), p = (p_par, p_perp >= 0),
/// tau > 0: coarse grid scan, then `refine_iters` rounds of simplex descent
/// restarted from the best `restarts` points with halving step sizes.
/// Deterministic for any `threads` (0 = hardware concurrency).
CEstimate estimate_c(const CSearchConfig& cfg, const ModelParams& params, unsigned threads = 0);

/// One estimate per mass ratio; a failing row records its error and the scan
/// continues.
std::vector<CScanRow> scan_c_vs_mass(const std::vector<double>& masses, const CSearchConfig& cfg,
                                     unsigned threads = 0);

/// pi / (1 + 1/M).
double c_prefactor(double mass_ratio);

}  // namespace polaron2d

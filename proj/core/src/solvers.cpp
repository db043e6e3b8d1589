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

#include "polaron2d/solvers.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "polaron2d/corefuncs.hpp"
#include "polaron2d/errors.hpp"

namespace polaron2d {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Offset of the right bracket end from the point where the sign is known.
constexpr double kInnerOffset = 1e-9;

struct Root {
  double x;
  int iterations;
};

// Bracketed refinement (Alefeld-Potra-Shi, i.e. safeguarded inverse
// interpolation with bisection fallback). fa and fb must differ in sign.
template <class F>
Root refine_root(F&& f, double a, double b, double fa, double fb, const RootFindSpec& spec) {
  std::uintmax_t iters = static_cast<std::uintmax_t>(spec.max_iter);
  const double x_tol = spec.x_tol;
  auto done = [x_tol](double lo, double hi) {
    return std::abs(hi - lo) <= x_tol + 4.0 * kEps * std::max(std::abs(lo), std::abs(hi));
  };
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, done, iters);
  if (!done(lo, hi)) {
    std::ostringstream msg;
    msg << "root refinement stalled at [" << lo << ", " << hi << "] after " << iters
        << " iterations";
    throw NonConvergence(msg.str());
  }
  return {0.5 * (lo + hi), static_cast<int>(iters)};
}

void require_subcritical(double mass_ratio, double alpha_m) {
  if (!(subcritical_margin(mass_ratio, alpha_m) > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "supercritical mass: alpha(M) = " << alpha_m << " >= M/(M+1) = "
        << mass_ratio / (mass_ratio + 1.0) << " at M = " << mass_ratio;
    throw SupercriticalMass(msg.str());
  }
}

void check_residual(double residual, const RootFindSpec& spec, const char* what) {
  if (!(std::abs(residual) <= spec.f_tol)) {
    std::ostringstream msg;
    msg << what << ": residual " << residual << " exceeds f_tol " << spec.f_tol;
    throw NonConvergence(msg.str());
  }
}

}  // namespace

void RootFindSpec::validate() const {
  if (!(x_tol > 0.0) || !(f_tol > 0.0)) throw DomainError("root tolerances must be positive");
  if (max_iter < 1) throw DomainError("max_iter must be >= 1");
  if (!(bracket_growth > 1.0)) throw DomainError("bracket_growth must exceed 1");
}

BoundResult solve_mu(const ModelParams& params, double lambda, double alpha_m,
                     const RootFindSpec& spec) {
  params.validate();
  spec.validate();
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  require_subcritical(params.mass_ratio, alpha_m);

  const double eb = params.binding_energy;
  auto lhs = [&](double mu) { return bound_equation_lhs(mu, lambda, params, alpha_m); };

  double right = eb * (1.0 + kInnerOffset);
  double f_right = lhs(right);
  if (!(f_right < 0.0)) {
    throw BracketFailure("bound equation is not negative just below E_B");
  }
  double left = right;
  double f_left = f_right;
  int expansions = 0;
  while (!(f_left > 0.0)) {
    if (expansions >= spec.max_iter) {
      throw BracketFailure("no sign change of the bound equation within max_iter expansions");
    }
    right = left;
    f_right = f_left;
    left *= spec.bracket_growth;
    if (!std::isfinite(left)) throw BracketFailure("bracket expansion overflowed");
    f_left = lhs(left);
    ++expansions;
  }

  const Root root = refine_root(lhs, left, right, f_left, f_right, spec);
  const double residual = lhs(root.x);
  check_residual(residual, spec, "solve_mu");

  BoundResult out;
  out.mu = root.x;
  out.lambda_used = lambda;
  out.gamma = root.x / eb;
  out.alpha_m = alpha_m;
  out.residual = residual;
  out.iterations = expansions + root.iterations;
  out.optimized = false;
  return out;
}

BoundResult solve_mu(const ModelParams& params, double lambda, const RootFindSpec& spec) {
  params.validate();
  return solve_mu(params, lambda, alpha_of_mass(params.mass_ratio), spec);
}

double solve_gamma(double mass_ratio, double alpha_m, const RootFindSpec& spec) {
  spec.validate();
  require_subcritical(mass_ratio, alpha_m);
  auto lhs = [&](double g) { return gamma_equation_lhs(g, mass_ratio, alpha_m); };

  double low = 1.0 + kInnerOffset;
  double f_low = lhs(low);
  if (!(f_low < 0.0)) throw BracketFailure("gamma equation is not negative at 1+");
  double high = low;
  double f_high = f_low;
  int expansions = 0;
  while (!(f_high > 0.0)) {
    if (expansions >= spec.max_iter) {
      throw BracketFailure("no sign change of the gamma equation within max_iter expansions");
    }
    low = high;
    f_low = f_high;
    high *= spec.bracket_growth;
    if (!std::isfinite(high)) throw BracketFailure("bracket expansion overflowed");
    f_high = lhs(high);
    ++expansions;
  }
  const Root root = refine_root(lhs, low, high, f_low, f_high, spec);
  check_residual(lhs(root.x), spec, "solve_gamma");
  return root.x;
}

double solve_gamma(double mass_ratio, const RootFindSpec& spec) {
  return solve_gamma(mass_ratio, alpha_of_mass(mass_ratio), spec);
}

CriticalMass critical_mass(const RootFindSpec& spec, double m_lo, double m_hi) {
  spec.validate();
  if (!(m_lo > 0.0 && m_lo < m_hi)) throw DomainError("critical mass bracket must be 0 < lo < hi");
  auto gap = [](double m) { return alpha_of_mass(m) - m / (m + 1.0); };

  // alpha decreases and M/(M+1) increases, so the gap must be strictly
  // decreasing; anything else means the bracket may hold several roots.
  constexpr int kProbe = 32;
  double prev = gap(m_lo);
  const double g_lo = prev;
  for (int i = 1; i <= kProbe; ++i) {
    const double m = m_lo + (m_hi - m_lo) * i / kProbe;
    const double g = gap(m);
    if (!(g < prev)) throw NonConvergence("alpha(M) - M/(M+1) is not monotone on the bracket");
    prev = g;
  }
  const double g_hi = prev;
  if (!(g_lo > 0.0 && g_hi < 0.0)) {
    throw BracketFailure("alpha(M) - M/(M+1) does not change sign on the bracket");
  }

  const Root root = refine_root(gap, m_lo, m_hi, g_lo, g_hi, spec);
  CriticalMass out;
  out.m_star = root.x;
  out.alpha_at_m_star = alpha_of_mass(root.x);
  out.residual = out.alpha_at_m_star - root.x / (root.x + 1.0);
  out.iterations = root.iterations;
  return out;
}

BoundResult optimize_lambda(const ModelParams& params, const OptimizedCutoff& range,
                            double alpha_m, const RootFindSpec& spec) {
  params.validate();
  spec.validate();
  if (!(range.lambda_min > 0.0 && range.lambda_min < range.lambda_max)) {
    throw DomainError("lambda range must satisfy 0 < lambda_min < lambda_max");
  }
  require_subcritical(params.mass_ratio, alpha_m);

  auto bound_at = [&](double t) { return solve_mu(params, std::exp(t), alpha_m, spec); };

  const double t_lo = std::log(range.lambda_min);
  const double t_hi = std::log(range.lambda_max);
  // mu(lambda) is flat at its maximum, so log(lambda) is only resolvable to
  // about sqrt(eps); the bound itself is then accurate to ~eps.
  const double t_tol = 1e-8 * std::max(1.0, t_hi - t_lo);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  double a = t_lo;
  double b = t_hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  BoundResult rc = bound_at(c);
  BoundResult rd = bound_at(d);
  int evals = 2;
  int total_iters = rc.iterations + rd.iterations;
  while (b - a > t_tol && evals < 4 * spec.max_iter) {
    if (rc.mu > rd.mu) {
      b = d;
      d = c;
      rd = rc;
      c = b - inv_phi * (b - a);
      rc = bound_at(c);
      total_iters += rc.iterations;
    } else {
      a = c;
      c = d;
      rc = rd;
      d = a + inv_phi * (b - a);
      rd = bound_at(d);
      total_iters += rd.iterations;
    }
    ++evals;
  }
  if (b - a > t_tol) throw NonConvergence("golden-section search on lambda did not converge");

  BoundResult best = rc.mu > rd.mu ? rc : rd;
  const double edge = 16.0 * t_tol;
  if (a - t_lo <= edge || t_hi - b <= edge) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "optimal lambda " << best.lambda_used << " lies on the boundary of ["
        << range.lambda_min << ", " << range.lambda_max << "]";
    throw RangeError(msg.str());
  }

  const double binding_scale = -params.binding_energy;
  if (binding_scale >= range.lambda_min && binding_scale <= range.lambda_max) {
    const BoundResult reference = solve_mu(params, binding_scale, alpha_m, spec);
    if (best.mu < reference.mu - spec.x_tol) {
      throw NonConvergence("mu(lambda) is not unimodal: the binding-scale cutoff beats the search");
    }
  }
  best.optimized = true;
  best.iterations = total_iters;
  return best;
}

BoundResult compute_bound(const ModelParams& params, const CutoffChoice& cutoff, double alpha_m,
                          const RootFindSpec& spec) {
  struct Visitor {
    const ModelParams& params;
    double alpha_m;
    const RootFindSpec& spec;
    BoundResult operator()(const FixedCutoff& c) const {
      return solve_mu(params, c.lambda, alpha_m, spec);
    }
    BoundResult operator()(const BindingScaleCutoff&) const {
      return solve_mu(params, -params.binding_energy, alpha_m, spec);
    }
    BoundResult operator()(const OptimizedCutoff& c) const {
      return optimize_lambda(params, c, alpha_m, spec);
    }
  };
  return std::visit(Visitor{params, alpha_m, spec}, cutoff);
}

OptimizedCutoff default_cutoff_range(const ModelParams& params) {
  const double scale = std::abs(params.binding_energy);
  return {1e-3 * scale, 1e3 * scale};
}

}  // namespace polaron2d

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

// Globally adaptive Gauss-Kronrod quadrature.
//
// The 21-point Gauss-Kronrod panel rule comes from Boost.Math; this file adds
// the global driver (bisect the panel with the largest error estimate until
// the summed estimate meets the tolerance), user breakpoints and the rational
// map used for [a, inf).

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polaron2d/errors.hpp"
#include "polaron2d/types.hpp"

namespace polaron2d {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int panels = 0;
};

namespace detail {

struct Panel {
  double a;
  double b;
  double value;
  double error;

  friend bool operator<(const Panel& l, const Panel& r) { return l.error < r.error; }
};

// Error estimate |K21 - G10| on the panel; Boost's own estimate carries an
// absolute floor that does not shrink with the panel width.
template <class F>
Panel gk21_panel(F& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double k = wk[0] * f(c);
  double g = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = f(c - h * x[i]) + f(c + h * x[i]);
    k += wk[i] * pair;
    if (i % 2 == 1) g += wg[i / 2] * pair;
  }
  return {a, b, h * k, std::abs(h * (k - g))};
}

}  // namespace detail

/// Integrates `f` over [a, b], splitting first at every breakpoint strictly
/// inside the interval. Throws QuadratureError when `spec.max_subdivisions`
/// panels do not reach max(abs_tol, rel_tol * |I|).
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breakpoints = {}) {
  if (a == b) return {};
  if (a > b) {
    QuadResult r = integrate(f, b, a, spec, breakpoints);
    r.value = -r.value;
    return r;
  }

  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  int panels = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const detail::Panel p = detail::gk21_panel(f, cuts[i], cuts[i + 1]);
    total += p.value;
    total_err += p.error;
    heap.push(p);
    ++panels;
  }

  // Panels too narrow to bisect are parked here so the loop can terminate.
  std::vector<detail::Panel> frozen;
  const auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

  while (total_err > target() && !heap.empty()) {
    if (panels >= spec.max_subdivisions) break;
    const detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      frozen.push_back(worst);
      continue;
    }
    const detail::Panel left = detail::gk21_panel(f, worst.a, mid);
    const detail::Panel right = detail::gk21_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  // Re-sum to shed the drift of the incremental updates.
  double value = 0.0;
  double err = 0.0;
  for (const auto& p : frozen) {
    value += p.value;
    err += p.error;
  }
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  if (!std::isfinite(value)) {
    throw QuadratureError("quadrature produced a non-finite value");
  }
  if (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "]: error estimate " << err
        << " after " << panels << " panels";
    throw QuadratureError(msg.str());
  }
  return {value, err, panels};
}

/// Integrates `f` over [a, inf) through x = a + scale * t / (1 - t).
/// `scale` should be comparable to the width of the bulk of the integrand.
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, const QuadratureSpec& spec,
                                 std::span<const double> breakpoints = {}, double scale = 1.0) {
  auto mapped = [&f, a, scale](double t) {
    const double one_minus = 1.0 - t;
    if (one_minus <= 0.0) return 0.0;
    const double x = a + scale * t / one_minus;
    const double jac = scale / (one_minus * one_minus);
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx * jac;
  };
  std::vector<double> tcuts;
  tcuts.reserve(breakpoints.size());
  for (double x : breakpoints) {
    if (x > a) {
      const double d = (x - a) / scale;
      tcuts.push_back(d / (1.0 + d));
    }
  }
  return integrate(mapped, 0.0, 1.0, spec, tcuts);
}

}  // namespace polaron2d

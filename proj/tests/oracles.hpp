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

// Reference implementations used only by the tests. None of these call into
// the library; each is a separate, deliberately plain route to the same number.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

constexpr double kPi = std::numbers::pi;

/// alpha(M) from the antiderivative, split at u* = 1/(M+1):
/// [0, u*]: 1/(M+1-u); [u*, 1]: M/v^2 + 1/((M+2) v), v = M+1-u.
inline double alpha_closed(double m) {
  const double u_star = 1.0 / (m + 1.0);
  const double v_hi = m + 1.0 - u_star;  // M(M+2)/(M+1)
  const double v_lo = m;
  const double flat = std::log((m + 1.0) / v_hi);
  const double kinked = m * (1.0 / v_lo - 1.0 / v_hi) + std::log(v_hi / v_lo) / (m + 2.0);
  return 1.0 / (2.0 * (m + 1.0)) + 0.5 * (flat + kinked);
}

/// Left-hand side of the bound equation, written out term by term.
inline double bound_lhs(double mu, double lambda, double m, double eb, double alpha) {
  const double prefactor = m / (m + 1.0) - alpha;
  const double ir = std::log(eb / mu + std::abs(eb) / lambda);
  return prefactor * std::log(mu / eb) - std::sqrt(lambda / -mu) -
         std::sqrt(lambda / (lambda - mu)) - alpha * ir - alpha;
}

inline double gamma_lhs(double g, double m, double alpha) {
  return (m / (m + 1.0) - alpha) * std::log(g) - 1.0 / std::sqrt(g) - 1.0 / std::sqrt(1.0 + g) -
         alpha * std::log(1.0 + 1.0 / g) - alpha;
}

/// Plain bisection; requires f(lo) and f(hi) of opposite sign.
template <class F>
double bisect(F f, double lo, double hi, double tol = 1e-12) {
  double flo = f(lo);
  if ((flo < 0) == (f(hi) < 0)) throw std::runtime_error("oracle bisect: no sign change");
  for (int i = 0; i < 2000 && std::abs(hi - lo) > tol * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// mu < E_B solving bound_lhs = 0 (negative at E_B, positive far below).
inline double mu_bisection(double m, double eb, double lambda) {
  const double a = alpha_closed(m);
  auto f = [&](double mu) { return bound_lhs(mu, lambda, m, eb, a); };
  double lo = 2.0 * eb;
  while (f(lo) < 0.0) lo *= 2.0;
  return bisect(f, lo, eb * (1.0 + 1e-14));
}

inline double gamma_bisection(double m) {
  const double a = alpha_closed(m);
  auto f = [&](double g) { return gamma_lhs(g, m, a); };
  double hi = 2.0;
  while (f(hi) < 0.0) hi *= 2.0;
  return bisect(f, 1.0, hi);
}

/// First grid cell in [lo, hi] where alpha(M) - M/(M+1) changes sign; returns
/// the cell midpoint.
inline double critical_mass_scan(double step = 1e-4, double lo = 1.0, double hi = 1.5) {
  auto gap = [](double m) { return alpha_closed(m) - m / (m + 1.0); };
  const int n = static_cast<int>(std::round((hi - lo) / step));
  double prev = gap(lo);
  for (int i = 1; i <= n; ++i) {
    const double m = lo + i * step;
    const double g = gap(m);
    if (prev > 0.0 && g <= 0.0) return m - 0.5 * step;
    prev = g;
  }
  throw std::runtime_error("oracle critical_mass_scan: no crossing");
}

struct LambdaScan {
  double lambda;
  double mu;
};

/// Best of `n` log-spaced cutoffs in [lo, hi] by bisection at each.
inline LambdaScan lambda_scan(double m, double eb, double lo, double hi, int n = 200) {
  LambdaScan best{0.0, -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < n; ++i) {
    const double lam = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    const double mu = mu_bisection(m, eb, lam);
    if (mu > best.mu) best = {lam, mu};
  }
  return best;
}

/// int f~ j_lambda over the plane as a radial integral in s = q^2:
/// pi c [ (1/lambda) int_0^lambda ds/(s+A) + int_lambda^inf ds/(s (s+A)) ].
inline double weighted_kernel_radial(double a, double c, double lambda) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double inner = ts.integrate([a](double s) { return 1.0 / (s + a); }, 0.0, lambda) / lambda;
  const double outer = es.integrate(
      [a, lambda](double t) {
        const double s = lambda + t;
        return 1.0 / (s * (s + a));
      },
      0.0, std::numeric_limits<double>::infinity());
  return kPi * c * (inner + outer);
}

/// The C integrand, from its definition, with plain doubles.
inline double c_integrand(double px, double py, double qx, double qy, double big_qx,
                          double big_qy, double tau, double mu, double lambda, double m) {
  auto w = [&](double s) { return std::sqrt((s - mu) / std::log1p((s - mu) / lambda)); };
  const double cx = big_qx / (m + 2.0);
  const double cy = big_qy / (m + 2.0);
  const double ax = px + cx, ay = py + cy;
  const double bx = qx + cx, by = qy + cy;
  const double pq = ax * bx + ay * by;
  const double qsq = qx * qx + qy * qy;
  const double d = (1.0 + 1.0 / m) * (ax * ax + ay * ay + bx * bx + by * by) +
                   (big_qx * big_qx + big_qy * big_qy) / (m + 2.0) + tau - mu;
  const double num = (2.0 / m) * std::abs(pq);
  const double den = d * d - (4.0 / (m * m)) * pq * pq;
  return w(tau + qsq) / qsq * num / den;
}

/// Iterated Cartesian quadrature of c_integrand over lambda < q^2 <= R^2:
/// tanh-sinh over x in three pieces; composite 20-point Gauss-Legendre over y
/// (panels no wider than 0.25), with a break where p'.q' changes sign.
inline double inner_cartesian(double px, double py, double big_qx, double big_qy, double tau,
                              double mu, double lambda, double m, double r, double tol = 1e-9) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const double cx = big_qx / (m + 2.0);
  const double cy = big_qy / (m + 2.0);
  const double ax = px + cx, ay = py + cy;

  auto column = [&](double x) {
    auto f = [&](double y) {
      return c_integrand(px, py, x, y, big_qx, big_qy, tau, mu, lambda, m);
    };
    std::vector<double> cuts;
    const double ytop = std::sqrt(std::max(0.0, r * r - x * x));
    if (x * x < lambda) {
      const double yin = std::sqrt(lambda - x * x);
      cuts = {-ytop, -yin, yin, ytop};
    } else {
      cuts = {-ytop, ytop};
    }
    std::vector<double> pts;
    if (ay != 0.0) pts.push_back(-cy - ax * (x + cx) / ay);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (x * x < lambda && i == 1) continue;  // the excluded disk
      std::vector<double> edges{cuts[i]};
      for (double y : pts) {
        if (y > cuts[i] && y < cuts[i + 1]) edges.push_back(y);
      }
      edges.push_back(cuts[i + 1]);
      for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
        const double width = edges[j + 1] - edges[j];
        const int panels = std::max(1, static_cast<int>(std::ceil(width / 0.25)));
        for (int k = 0; k < panels; ++k) {
          total += GL::integrate(f, edges[j] + width * k / panels,
                                 edges[j] + width * (k + 1) / panels);
        }
      }
    }
    return total;
  };

  boost::math::quadrature::tanh_sinh<double> ts;
  const double rl = std::sqrt(lambda);
  return ts.integrate(column, -r, -rl, tol) + ts.integrate(column, -rl, rl, tol) +
         ts.integrate(column, rl, r, tol);
}

/// splitmix64, for test sampling.
struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

}  // namespace oracle

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

#include "polaron2d/cconstant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "polaron2d/errors.hpp"
#include "polaron2d/parallel.hpp"
#include "polaron2d/quadrature.hpp"

namespace polaron2d {

namespace {

constexpr double kPi = std::numbers::pi;

struct KernelConsts {
  double m;
  double k1;    // 1 + 1/M
  double two_over_m;
  double shift;  // 1/(M+2)
};

KernelConsts consts_for(double m) { return {m, 1.0 + 1.0 / m, 2.0 / m, 1.0 / (m + 2.0)}; }

double weight_unchecked(double s, double mu, double lambda) {
  const double x = s - mu;
  return std::sqrt(x / std::log1p(x / lambda));
}

// |sigma^-(p', q')| without the q-dependent weight factors.
double sigma_minus_abs(Vec2 ph, Vec2 qh, double q_sq_const, const KernelConsts& kc) {
  const double pq = dot(ph, qh);
  const double d = kc.k1 * (norm2(ph) + norm2(qh)) + q_sq_const;
  const double x = kc.two_over_m * pq;
  return kc.two_over_m * std::abs(pq) / ((d - x) * (d + x));
}

}  // namespace

std::vector<double> GridSpec::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  if (count == 1) {
    out.push_back(log_spaced ? std::sqrt(min * max) : 0.5 * (min + max));
    return out;
  }
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    if (log_spaced) {
      out.push_back(std::exp(std::log(min) + f * (std::log(max) - std::log(min))));
    } else {
      out.push_back(min + f * (max - min));
    }
  }
  // Pin the ends exactly so boundary detection is not fooled by rounding.
  out.front() = min;
  out.back() = max;
  return out;
}

double GridSpec::spacing() const {
  if (count <= 1) return 0.0;
  const double width = log_spaced ? std::log(max) - std::log(min) : max - min;
  return width / (count - 1);
}

void CSearchConfig::validate() const {
  if (!(mu < 0.0)) throw DomainError("C search: mu must be negative");
  if (!(lambda > 0.0)) throw DomainError("C search: lambda must be positive");
  if (!(q_mag_max * q_mag_max > lambda)) {
    throw DomainError("C search: q_mag_max^2 must exceed lambda");
  }
  for (const GridSpec* g : {&tau_grid, &qmag_grid, &ppar_grid, &pperp_grid}) {
    if (g->count < 1 || !(g->min <= g->max)) throw DomainError("C search: malformed grid");
  }
  if (!(tau_grid.log_spaced && tau_grid.min > 0.0)) {
    throw DomainError("C search: tau grid must be log-spaced and positive");
  }
  if (qmag_grid.min < 0.0) throw DomainError("C search: |Q| grid must be nonnegative");
  if (pperp_grid.min < 0.0) throw DomainError("C search: p_perp grid must be nonnegative");
  if (refine_iters < 0 || restarts < 1 || simplex_max_evals < 1) {
    throw DomainError("C search: refinement settings out of range");
  }
  if (!(max_tail_rel > 0.0) || !(stability_tol > 0.0)) {
    throw DomainError("C search: tolerances must be positive");
  }
  quad.validate();
}

CSearchConfig CSearchConfig::coarse() { return CSearchConfig{}; }

CSearchConfig CSearchConfig::fine() {
  CSearchConfig cfg;
  cfg.tau_grid = {1e-3, 1e3, 13, true};
  cfg.qmag_grid = {0.0, 4.0, 9, false};
  cfg.ppar_grid = {-4.0, 4.0, 17, false};
  cfg.pperp_grid = {0.0, 4.0, 9, false};
  cfg.refine_iters = 4;
  cfg.simplex_max_evals = 120;
  return cfg;
}

double c_prefactor(double mass_ratio) { return kPi / (1.0 + 1.0 / mass_ratio); }

double c_weight(double s, double mu, double lambda) {
  if (!(s >= 0.0)) throw DomainError("c_weight: s must be nonnegative");
  if (!(mu < 0.0)) throw DomainError("c_weight: mu must be negative");
  if (!(lambda > 0.0)) throw DomainError("c_weight: lambda must be positive");
  return weight_unchecked(s, mu, lambda);
}

double c_integrand(Vec2 p, Vec2 q, Vec2 big_q, double tau, const CSearchConfig& cfg,
                   const ModelParams& params) {
  const double qsq = norm2(q);
  if (!(qsq > cfg.lambda)) throw DomainError("c_integrand: requires q^2 > lambda");
  if (!(tau >= 0.0)) throw DomainError("c_integrand: tau must be nonnegative");
  const KernelConsts kc = consts_for(params.mass_ratio);
  const Vec2 c = kc.shift * big_q;
  const double q_sq_const = kc.shift * norm2(big_q) + tau - cfg.mu;
  return weight_unchecked(tau + qsq, cfg.mu, cfg.lambda) / qsq *
         sigma_minus_abs(p + c, q + c, q_sq_const, kc);
}

InnerIntegral inner_integral(Vec2 p, Vec2 big_q, double tau, const CSearchConfig& cfg,
                             const ModelParams& params) {
  if (!(tau >= 0.0)) throw DomainError("inner_integral: tau must be nonnegative");
  const KernelConsts kc = consts_for(params.mass_ratio);
  const Vec2 c = kc.shift * big_q;
  const Vec2 ph = p + c;
  const double ph_norm = norm(ph);
  if (ph_norm == 0.0) return {};

  const double c_norm = norm(c);
  const double r_max = cfg.q_mag_max;
  if (!(r_max > 2.0 * c_norm)) {
    throw TailBoundExceeded("inner_integral: q_mag_max must exceed twice |Q|/(M+2)");
  }

  const double q_sq_const = kc.shift * norm2(big_q) + tau - cfg.mu;
  const double phi = std::atan2(ph.y, ph.x);
  const double ph_dot_c = dot(ph, c);
  const double mu = cfg.mu;
  const double lambda = cfg.lambda;

  QuadratureSpec angular = cfg.quad;
  angular.rel_tol = 0.1 * cfg.quad.rel_tol;

  // Integral over the full circle of radius r, measure d(theta).
  auto ring = [&](double r) {
    // p'.q' vanishes where r cos(theta - phi) |p'| = -p'.c; split there.
    std::array<double, 2> kinks{};
    std::size_t nk = 0;
    const double kappa = -ph_dot_c / (r * ph_norm);
    if (std::abs(kappa) < 1.0) {
      const double delta = std::acos(kappa);
      kinks[nk++] = phi - delta;
      kinks[nk++] = phi + delta;
    }
    auto f = [&](double theta) {
      const Vec2 q{r * std::cos(theta), r * std::sin(theta)};
      return sigma_minus_abs(ph, q + c, q_sq_const, kc);
    };
    const QuadResult res =
        integrate(f, phi - kPi, phi + kPi, angular, std::span<const double>(kinks.data(), nk));
    return res.value;
  };

  // x = log q^2, dq = (q^2 / 2) dx dtheta; the 1/q^2 factor cancels.
  auto radial = [&](double x) {
    const double s = std::exp(x);
    return 0.5 * weight_unchecked(tau + s, mu, lambda) * ring(std::sqrt(s));
  };

  std::vector<double> cuts;
  const double r_merge = std::abs(ph_dot_c) / ph_norm;
  for (double s : {r_merge * r_merge, norm2(ph), c_norm * c_norm, q_sq_const}) {
    if (s > lambda && s < r_max * r_max) cuts.push_back(std::log(s));
  }
  const QuadResult res =
      integrate(radial, std::log(lambda), std::log(r_max * r_max), cfg.quad, cuts);

  // |sigma^-| <= 2|p'| / ((M+1)|q'|^3), |q'| >= |q|(1 - |c|/R) and
  // w(tau + q^2) <= K |q| beyond R, leaving int_R^inf r^-3 dr = 1/(2R^2).
  const double r2 = r_max * r_max;
  const double k_w = std::sqrt(1.0 + (tau - mu) / r2) / std::sqrt(std::log1p((tau + r2 - mu) / lambda));
  const double shrink = 1.0 - c_norm / r_max;
  const double tail = 2.0 * kPi * k_w * ph_norm /
                      ((params.mass_ratio + 1.0) * shrink * shrink * shrink * r2);

  if (tail > cfg.max_tail_rel * res.value) {
    std::ostringstream msg;
    msg << "inner_integral: tail bound " << tail << " exceeds " << cfg.max_tail_rel
        << " of the value " << res.value << "; increase q_mag_max";
    throw TailBoundExceeded(msg.str());
  }
  return {res.value, res.abs_error, tail};
}

double c_objective(Vec2 p, Vec2 big_q, double tau, const CSearchConfig& cfg,
                   const ModelParams& params, double* tail_bound) {
  const InnerIntegral inner = inner_integral(p, big_q, tau, cfg, params);
  const double w = weight_unchecked(tau + norm2(p), cfg.mu, cfg.lambda);
  if (tail_bound != nullptr) *tail_bound = w * inner.tail_bound;
  return w * inner.value;
}

namespace {

using Point4 = std::array<double, 4>;  // (|Q|, p_par, p_perp, log tau)

struct Box {
  Point4 lo;
  Point4 hi;

  Point4 clamp(Point4 x) const {
    for (std::size_t i = 0; i < 4; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    return x;
  }
};

struct Sample {
  Point4 x;
  double value;
};

class Objective {
 public:
  Objective(const CSearchConfig& cfg, const ModelParams& params) : cfg_(cfg), params_(params) {}

  double operator()(const Point4& x) const {
    return c_objective({x[1], x[2]}, {x[0], 0.0}, std::exp(x[3]), cfg_, params_);
  }

 private:
  const CSearchConfig& cfg_;
  const ModelParams& params_;
};

// Simplex descent on the negated objective, confined to the box by clamping.
Sample simplex_ascent(const Objective& f, const Box& box, Sample start, const Point4& step,
                      int max_evals, long& evals) {
  constexpr std::size_t n = 4;
  std::array<Sample, n + 1> simplex;
  simplex[0] = start;
  int used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Point4 x = start.x;
    if (step[i] == 0.0) {
      simplex[i + 1] = start;
      continue;
    }
    x[i] += step[i];
    if (x[i] > box.hi[i]) x[i] = start.x[i] - step[i];
    x = box.clamp(x);
    simplex[i + 1] = {x, f(x)};
    ++used;
  }

  auto eval = [&](const Point4& x) {
    ++used;
    return Sample{x, f(x)};
  };
  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Sample& a, const Sample& b) { return a.value > b.value; });
  };

  order();
  while (used < max_evals) {
    Point4 centroid{};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i].x[d] / n;
    }
    auto along = [&](double t) {
      Point4 x;
      for (std::size_t d = 0; d < n; ++d) x[d] = centroid[d] + t * (simplex[n].x[d] - centroid[d]);
      return box.clamp(x);
    };

    const Sample refl = eval(along(-1.0));
    if (refl.value > simplex[0].value) {
      const Sample exp = eval(along(-2.0));
      simplex[n] = exp.value > refl.value ? exp : refl;
    } else if (refl.value > simplex[n - 1].value) {
      simplex[n] = refl;
    } else {
      const bool outside = refl.value > simplex[n].value;
      const Sample con = eval(along(outside ? -0.5 : 0.5));
      if (con.value > std::max(simplex[n].value, outside ? refl.value : simplex[n].value)) {
        simplex[n] = con;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          Point4 x;
          for (std::size_t d = 0; d < n; ++d) {
            x[d] = simplex[0].x[d] + 0.5 * (simplex[i].x[d] - simplex[0].x[d]);
          }
          simplex[i] = eval(x);
        }
      }
    }
    order();

    double spread = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      spread = std::max(spread, std::abs(simplex[i].value - simplex[0].value));
    }
    if (spread <= 1e-10 * std::abs(simplex[0].value)) break;
  }
  evals += used;
  return simplex[0];
}

}  // namespace

CEstimate estimate_c(const CSearchConfig& cfg, const ModelParams& params, unsigned threads) {
  cfg.validate();
  if (!(params.mass_ratio > 0.0)) throw DomainError("estimate_c: mass ratio must be positive");

  const std::vector<double> qs = cfg.qmag_grid.points();
  const std::vector<double> pars = cfg.ppar_grid.points();
  const std::vector<double> perps = cfg.pperp_grid.points();
  const std::vector<double> taus = cfg.tau_grid.points();

  std::vector<Point4> grid;
  grid.reserve(qs.size() * pars.size() * perps.size() * taus.size());
  for (double q : qs) {
    for (double a : pars) {
      for (double b : perps) {
        for (double t : taus) grid.push_back({q, a, b, std::log(t)});
      }
    }
  }

  const Objective f(cfg, params);
  const std::vector<double> values =
      parallel_map(grid.size(), threads, [&](std::size_t i) { return f(grid[i]); });

  CEstimate est;
  est.mass_ratio = params.mass_ratio;
  est.mu = cfg.mu;
  est.lambda = cfg.lambda;
  est.evaluations = static_cast<long>(grid.size());

  std::vector<std::size_t> idx(grid.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  std::vector<Sample> seeds;
  for (std::size_t i : idx) {
    if (static_cast<int>(seeds.size()) >= cfg.restarts) break;
    seeds.push_back({grid[i], values[i]});
  }
  Sample best = seeds.front();
  est.refinement_trace.emplace_back(0, best.value);

  const Box box{{cfg.qmag_grid.min, cfg.ppar_grid.min, cfg.pperp_grid.min, std::log(cfg.tau_grid.min)},
                {cfg.qmag_grid.max, cfg.ppar_grid.max, cfg.pperp_grid.max, std::log(cfg.tau_grid.max)}};
  const Point4 base_step{cfg.qmag_grid.spacing(), cfg.ppar_grid.spacing(),
                         cfg.pperp_grid.spacing(), cfg.tau_grid.spacing()};

  for (int level = 1; level <= cfg.refine_iters; ++level) {
    Point4 step = base_step;
    const double scale = std::ldexp(1.0, -level);
    for (double& s : step) s *= scale;
    struct Outcome {
      Sample sample;
      long evals;
    };
    const std::vector<Outcome> results = parallel_map(seeds.size(), threads, [&](std::size_t i) {
      long evals = 0;
      const Sample s = simplex_ascent(f, box, seeds[i], step, cfg.simplex_max_evals, evals);
      return Outcome{s.value >= seeds[i].value ? s : seeds[i], evals};
    });
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      seeds[i] = results[i].sample;
      est.evaluations += results[i].evals;
      if (seeds[i].value > best.value) best = seeds[i];
    }
    est.refinement_trace.emplace_back(level, best.value);
  }

  est.value = best.value;
  est.argmax = {best.x[0], best.x[1], best.x[2], std::exp(best.x[3])};
  est.prefactor = c_prefactor(params.mass_ratio);
  est.ratio = est.value / est.prefactor;

  double tail = 0.0;
  c_objective({best.x[1], best.x[2]}, {best.x[0], 0.0}, std::exp(best.x[3]), cfg, params, &tail);
  est.truncation_error_bound = tail;

  // Box faces that are truncations of the true search space. |Q| = 0 and
  // p_perp = 0 are symmetry boundaries and are not reported.
  const auto at = [](double x, double edge, double width) {
    return std::abs(x - edge) <= 1e-4 * width;
  };
  const double wq = box.hi[0] - box.lo[0];
  const double wpar = box.hi[1] - box.lo[1];
  const double wperp = box.hi[2] - box.lo[2];
  const double wtau = box.hi[3] - box.lo[3];
  if (wq > 0 && at(best.x[0], box.hi[0], wq)) est.boundary_coordinates.push_back("Q_mag=max");
  if (wpar > 0 && at(best.x[1], box.lo[1], wpar)) est.boundary_coordinates.push_back("p_par=min");
  if (wpar > 0 && at(best.x[1], box.hi[1], wpar)) est.boundary_coordinates.push_back("p_par=max");
  if (wperp > 0 && at(best.x[2], box.hi[2], wperp)) est.boundary_coordinates.push_back("p_perp=max");
  if (wtau > 0 && at(best.x[3], box.lo[3], wtau)) est.boundary_coordinates.push_back("tau=min");
  if (wtau > 0 && at(best.x[3], box.hi[3], wtau)) est.boundary_coordinates.push_back("tau=max");
  est.boundary_maximizer = !est.boundary_coordinates.empty();

  const auto& trace = est.refinement_trace;
  if (trace.size() >= 2) {
    const double last = trace.back().second;
    const double prev = trace[trace.size() - 2].second;
    est.stable = std::abs(last - prev) <= cfg.stability_tol * std::abs(last);
  }
  return est;
}

std::vector<CScanRow> scan_c_vs_mass(const std::vector<double>& masses, const CSearchConfig& cfg,
                                     unsigned threads) {
  if (masses.empty()) throw DomainError("scan_c_vs_mass: no mass ratios given");
  std::vector<CScanRow> rows;
  rows.reserve(masses.size());
  for (double m : masses) {
    CScanRow row;
    row.mass_ratio = m;
    try {
      row.estimate = estimate_c(cfg, ModelParams{m, -1.0}, threads);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace polaron2d

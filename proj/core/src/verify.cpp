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

#include "polaron2d/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "polaron2d/corefuncs.hpp"
#include "polaron2d/errors.hpp"
#include "polaron2d/parallel.hpp"
#include "polaron2d/quadrature.hpp"

namespace polaron2d {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = std::numeric_limits<double>::min();

// Default tolerances: quadrature against closed form, and exact algebra.
constexpr double kQuadTol = 1e-8;
constexpr double kAlgebraTol = 1e-12;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [a, b] from the top 53 bits; identical on every platform.
  double uniform(double a, double b) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }

  Vec2 in_disk(double r_max) {
    const double r = uniform(0.0, r_max);
    const double t = uniform(0.0, 2.0 * kPi);
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::uint64_t state_;
};

struct Outcome {
  double violation = 0.0;
  Record record;
};

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

// Signed margin of `lhs <= rhs`, relative to |rhs|.
double excess(double lhs, double rhs) { return (lhs - rhs) / std::max(std::abs(rhs), kTiny); }

template <class Draw>
CaseResult run_case(std::string name, CaseKind kind, double default_tol, long samples,
                    const VerifyOptions& opts, Draw&& draw) {
  CaseResult res;
  res.name = std::move(name);
  res.kind = kind;
  res.tolerance = opts.tolerance.value_or(default_tol);
  res.samples_run = std::max(0L, samples);

  const auto outcomes =
      parallel_map(static_cast<std::size_t>(res.samples_run), opts.threads, [&](std::size_t i) {
        Rng rng(opts.seed ^ static_cast<std::uint64_t>(i));
        return draw(rng);
      });

  res.max_violation = -std::numeric_limits<double>::infinity();
  std::size_t worst = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const double v = outcomes[i].violation;
    if (std::isnan(v) || v > res.max_violation) {
      res.max_violation = v;
      worst = i;
      if (std::isnan(v)) break;
    }
    if (kind == CaseKind::kInequality && v > 0.0 && v <= res.tolerance) ++res.slack_warnings;
  }
  if (outcomes.empty()) res.max_violation = 0.0;
  if (!outcomes.empty()) {
    res.worst_input = outcomes[worst].record;
    res.worst_input.emplace_back("sample_index", static_cast<double>(worst));
  }
  res.passed = !std::isnan(res.max_violation) && res.max_violation <= res.tolerance;
  return res;
}

KernelPoint draw_kernel_point(Rng& rng) {
  KernelPoint k;
  k.u = rng.uniform(0.0, 1.0);
  k.tau = rng.uniform(0.0, 100.0);
  k.psq = rng.uniform(0.0, 100.0);
  k.mu = -rng.uniform(0.01, 100.0);
  k.lambda = rng.uniform(0.01, 100.0);
  return k;
}

Record kernel_record(const KernelPoint& k, double m) {
  return {{"u", k.u}, {"tau", k.tau}, {"psq", k.psq}, {"mu", k.mu}, {"lambda", k.lambda}, {"M", m}};
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "all") return Suite::kAll;
  if (name == "integrals") return Suite::kIntegrals;
  if (name == "inequalities") return Suite::kInequalities;
  if (name == "monotonicity") return Suite::kMonotonicity;
  if (name == "chain") return Suite::kChain;
  return std::nullopt;
}

std::string_view suite_name(Suite suite) {
  switch (suite) {
    case Suite::kAll: return "all";
    case Suite::kIntegrals: return "integrals";
    case Suite::kInequalities: return "inequalities";
    case Suite::kMonotonicity: return "monotonicity";
    case Suite::kChain: return "chain";
  }
  return "unknown";
}

double resolvent_radial_integral(double lambda, double mu, const QuadratureSpec& quad) {
  if (!(lambda > 0.0) || !(mu < 0.0)) throw DomainError("resolvent integral: need lambda > 0, mu < 0");
  auto f = [mu](double s) {
    const double d = s - mu;
    return 1.0 / (d * d);
  };
  return kPi * integrate_to_infinity(f, lambda, quad, {}, lambda - mu).value;
}

double disk_area_cubature(double lambda, const QuadratureSpec& quad) {
  if (!(lambda > 0.0)) throw DomainError("disk area: lambda must be positive");
  const double r = std::sqrt(lambda);
  // Outer variable x, inner y over |y| <= sqrt(lambda - x^2); the chord has
  // square-root endpoint behaviour, which tanh-sinh absorbs.
  boost::math::quadrature::tanh_sinh<double> ts;
  auto chord = [&](double x) {
    const double h2 = lambda - x * x;
    if (h2 <= 0.0) return 0.0;
    const double h = std::sqrt(h2);
    return integrate([](double) { return 1.0; }, -h, h, quad).value;
  };
  return ts.integrate(chord, -r, r, quad.rel_tol);
}

SigmaMinusForms sigma_minus_forms(Vec2 p, Vec2 q, double b, double mass_ratio,
                                  const QuadratureSpec& quad) {
  const double m = mass_ratio;
  const double pq = dot(p, q);
  const double sum = norm2(p) + norm2(q);
  // The kernel's spectral term P^2/(M+2) + H - mu equals B/M.
  auto sigma = [&](double sign) {
    return 1.0 / ((1.0 + 1.0 / m) * sum + sign * (2.0 / m) * pq + b / m);
  };
  const double difference = 0.5 * (sigma(-1.0) - sigma(1.0));

  const double a = (m + 1.0) * sum + b;
  auto f = [&](double u) {
    const double d = a - 2.0 * u * pq;
    return 1.0 / (d * d);
  };
  const double integral = m * pq * integrate(f, -1.0, 1.0, quad).value;
  // int_{-1}^{1} du / (a - 2ub)^2 = 2 / (a^2 - 4b^2).
  const double closed = m * pq * 2.0 / ((a - 2.0 * pq) * (a + 2.0 * pq));
  return {difference, integral, closed};
}

UIntegralChain u_integral_chain(Vec2 p_shifted, Vec2 q_shifted, double qsq, double b,
                                double mass_ratio, const QuadratureSpec& quad) {
  const double m = mass_ratio;
  const double pq = dot(p_shifted, q_shifted);
  const double apq = std::abs(pq);
  const double s = norm2(p_shifted) + norm2(q_shifted);
  const double a = (m + 1.0) * s + b;

  auto full = [&](double u) {
    const double d = a - 2.0 * u * pq;
    return apq / (qsq * d * d);
  };
  const double lhs = integrate(full, -1.0, 1.0, quad).value;

  auto half = [&](double u) {
    const double d = a - 2.0 * u * apq;
    return apq / (qsq * d * d);
  };
  const double middle = apq / (qsq * a * a) + integrate(half, 0.0, 1.0, quad).value;

  auto relaxed = [&](double u) {
    const double w = m + 1.0 - u;
    return 1.0 / (2.0 * qsq * w * (w * s + b));
  };
  const double final = 1.0 / (2.0 * qsq * (m + 1.0) * a) + integrate(relaxed, 0.0, 1.0, quad).value;
  return {lhs, middle, final};
}

MassInequality mass_inequality(Vec2 p, Vec2 big_p, double u, double mass_ratio) {
  const double m = mass_ratio;
  const double w = m + 1.0 - u;
  const double den = m * m + 3.0 * m + 1.0 - u;
  auto left_of = [&](Vec2 bp) {
    const Vec2 ph = p + (1.0 / (m + 2.0)) * bp;
    return w * norm2(ph) + m / (m + 2.0) * norm2(bp);
  };
  const double psq = norm2(p);
  // Gradient in P vanishes at P* = -(M+1-u)(M+2) / (M^2+3M+1-u) p.
  const Vec2 p_star = (-w * (m + 2.0) / den) * p;
  return {left_of(big_p), m * w * (m + 2.0) / den * psq,
          m * beta_coefficient(u, ModelParams{m, -1.0}) * psq, left_of(p_star)};
}

double rearranged_lhs_cubature(Vec2 v, const KernelPoint& k, const ModelParams& params,
                               const QuadratureSpec& quad) {
  const double a = kernel_offset(k, params);
  const double w = params.mass_ratio + 1.0 - k.u;
  const double c = 1.0 / (2.0 * w * w);
  const double vsq = norm2(v);
  const double theta_far = std::atan2(-v.y, -v.x);  // where |q + v| is smallest

  // q = r e_theta, x = log r^2: dq / q^2 = dx dtheta / 2.
  auto ring = [&](double r) {
    auto f = [&](double theta) {
      const Vec2 q{r * std::cos(theta), r * std::sin(theta)};
      return c / (norm2(q + v) + a);
    };
    return integrate(f, theta_far - kPi, theta_far + kPi, quad,
                     std::array<double, 1>{theta_far})
        .value;
  };
  auto radial = [&](double x) { return 0.5 * ring(std::exp(0.5 * x)); };

  const double x0 = std::log(k.lambda);
  std::vector<double> cuts;
  for (double s : {vsq, a}) {
    if (s > k.lambda) cuts.push_back(std::log(s));
  }
  return integrate_to_infinity(radial, x0, quad, cuts, 2.0).value;
}

double weighted_kernel_radial(const KernelPoint& k, const ModelParams& params,
                              const QuadratureSpec& quad) {
  auto f = [&](double s) { return radial_kernel(s, k, params); };
  const double inner = integrate(f, 0.0, k.lambda, quad).value / k.lambda;
  // int_lambda^inf f(s)/s ds with s = e^x.
  auto g = [&](double x) { return radial_kernel(std::exp(x), k, params); };
  const double a = kernel_offset(k, params);
  std::vector<double> cuts;
  if (a > k.lambda) cuts.push_back(std::log(a));
  const double outer = integrate_to_infinity(g, std::log(k.lambda), quad, cuts, 2.0).value;
  return kPi * (inner + outer);
}

double chain_pre_minimization(double tau, double mu, double lambda, const ModelParams& params,
                              double alpha_m) {
  const double m = params.mass_ratio;
  return kPi / (1.0 + 1.0 / m) * std::log((tau - mu) / -params.binding_energy) -
         kPi * std::sqrt(lambda / -mu) - kPi * std::sqrt(lambda / (lambda - mu)) -
         kPi * alpha_m * (1.0 + std::log1p((tau - mu) / lambda));
}

CaseResult verify_resolvent_integral(const VerifyOptions& opts) {
  return run_case("resolvent_integral", CaseKind::kIdentity, 1e-10, opts.samples, opts, [&](Rng& rng) {
    const double lambda = rng.uniform(0.01, 100.0);
    const double mu = -rng.uniform(0.01, 100.0);
    const double quad = resolvent_radial_integral(lambda, mu, opts.quad);
    return Outcome{rel_diff(quad, kPi / (lambda - mu)), {{"lambda", lambda}, {"mu", mu}}};
  });
}

CaseResult verify_disk_area(const VerifyOptions& opts) {
  return run_case("disk_area", CaseKind::kIdentity, kAlgebraTol, opts.samples, opts, [&](Rng& rng) {
    const double lambda = rng.uniform(0.01, 100.0);
    return Outcome{rel_diff(disk_area_cubature(lambda, opts.quad), kPi * lambda),
                   {{"lambda", lambda}}};
  });
}

CaseResult verify_sigma_minus(const VerifyOptions& opts) {
  return run_case("sigma_minus_identity", CaseKind::kIdentity, kQuadTol, opts.samples, opts,
                  [&](Rng& rng) {
                    const Vec2 p = rng.in_disk(10.0);
                    const Vec2 q = rng.in_disk(10.0);
                    const double b = rng.uniform(0.0, 100.0);
                    const double m = rng.uniform(0.2, 50.0);
                    const SigmaMinusForms f = sigma_minus_forms(p, q, b, m, opts.quad);
                    const double v = std::max({rel_diff(f.difference, f.integral),
                                               rel_diff(f.difference, f.closed),
                                               rel_diff(f.integral, f.closed)});
                    return Outcome{v, {{"p_x", p.x}, {"p_y", p.y}, {"q_x", q.x}, {"q_y", q.y},
                                       {"B", b}, {"M", m}}};
                  });
}

CaseResult verify_weighted_kernel_closed_form(const VerifyOptions& opts) {
  return run_case("weighted_kernel_closed_form", CaseKind::kIdentity, kQuadTol,
                  std::min(opts.samples, opts.cubature_cap), opts, [&](Rng& rng) {
                    const KernelPoint k = draw_kernel_point(rng);
                    const double m = rng.uniform(0.2, 50.0);
                    const ModelParams params{m, -1.0};
                    const double v = rel_diff(weighted_kernel_integral(k, params),
                                              weighted_kernel_radial(k, params, opts.quad));
                    return Outcome{v, kernel_record(k, m)};
                  });
}

CaseResult verify_u_integral_bound(const VerifyOptions& opts) {
  return run_case("u_integral_bound", CaseKind::kInequality, kAlgebraTol, opts.samples, opts,
                  [&](Rng& rng) {
                    const double m = rng.uniform(0.2, 50.0);
                    const Vec2 p = rng.in_disk(10.0);
                    Vec2 q = rng.in_disk(10.0);
                    if (norm2(q) == 0.0) q = {1.0, 0.0};
                    const Vec2 big_p = rng.in_disk(10.0);
                    const double b = rng.uniform(0.0, 100.0);
                    const Vec2 shift = (1.0 / (m + 2.0)) * big_p;
                    const UIntegralChain c =
                        u_integral_chain(p + shift, q + shift, norm2(q), b, m, opts.quad);
                    const double v = std::max(excess(c.lhs, c.middle), excess(c.middle, c.final));
                    return Outcome{v, {{"p_x", p.x}, {"p_y", p.y}, {"q_x", q.x}, {"q_y", q.y},
                                       {"P_x", big_p.x}, {"P_y", big_p.y}, {"B", b}, {"M", m}}};
                  });
}

CaseResult verify_mass_inequalities(const VerifyOptions& opts) {
  return run_case("mass_inequality", CaseKind::kInequality, kAlgebraTol, opts.samples, opts,
                  [&](Rng& rng) {
                    const double m = rng.uniform(0.2, 50.0);
                    const Vec2 p = rng.in_disk(10.0);
                    const Vec2 big_p = rng.in_disk(10.0);
                    // Every eighth sample pins u = 0, the u-free special case.
                    const double u = rng.uniform(0.0, 1.0) * ((rng.next() & 7u) != 0u);
                    const MassInequality r = mass_inequality(p, big_p, u, m);
                    const double scale = std::max(r.left, kTiny);
                    double v = std::max((r.middle - r.left) / scale, (r.right - r.middle) / scale);
                    if (u == 0.0) v = std::max(v, (m * norm2(p) - r.middle) / scale);
                    return Outcome{v, {{"p_x", p.x}, {"p_y", p.y}, {"P_x", big_p.x},
                                       {"P_y", big_p.y}, {"u", u}, {"M", m}}};
                  });
}

CaseResult verify_mass_inequality_sharpness(const VerifyOptions& opts) {
  return run_case("mass_inequality_sharpness", CaseKind::kIdentity, 1e-10, opts.samples, opts,
                  [&](Rng& rng) {
                    const double m = rng.uniform(0.2, 50.0);
                    const Vec2 p = rng.in_disk(10.0);
                    const double u = rng.uniform(0.0, 1.0);
                    const MassInequality r = mass_inequality(p, {}, u, m);
                    return Outcome{rel_diff(r.left_at_minimizer, r.middle),
                                   {{"p_x", p.x}, {"p_y", p.y}, {"u", u}, {"M", m}}};
                  });
}

CaseResult verify_rearrangement(const VerifyOptions& opts) {
  return run_case("rearrangement", CaseKind::kInequality, kQuadTol,
                  std::min(opts.samples, opts.cubature_cap), opts, [&](Rng& rng) {
                    const KernelPoint k = draw_kernel_point(rng);
                    const double m = rng.uniform(0.2, 50.0);
                    const Vec2 v = rng.in_disk(10.0);
                    const ModelParams params{m, -1.0};
                    const double lhs = rearranged_lhs_cubature(v, k, params, opts.quad);
                    const double rhs = weighted_kernel_integral(k, params);
                    Record rec = kernel_record(k, m);
                    rec.emplace_back("v_x", v.x);
                    rec.emplace_back("v_y", v.y);
                    return Outcome{excess(lhs, rhs), std::move(rec)};
                  });
}

CaseResult verify_kernel_offset_bound(const VerifyOptions& opts) {
  return run_case("kernel_offset_bound", CaseKind::kInequality, kAlgebraTol, opts.samples, opts,
                  [&](Rng& rng) {
                    const KernelPoint k = draw_kernel_point(rng);
                    const double m = rng.uniform(0.2, 50.0);
                    const double a = kernel_offset(k, ModelParams{m, -1.0});
                    return Outcome{excess(a, k.tau + k.psq - k.mu), kernel_record(k, m)};
                  });
}

namespace {

struct EnergyDraw {
  ModelParams params;
  double lambda;
  double mu;
};

// Subcritical mass, cutoff and a trial energy strictly below E_B.
EnergyDraw draw_energy(Rng& rng) {
  EnergyDraw d;
  d.params.mass_ratio = rng.uniform(1.3, 50.0);
  d.params.binding_energy = -rng.uniform(0.01, 100.0);
  d.lambda = rng.uniform(0.01, 100.0);
  d.mu = d.params.binding_energy * std::pow(10.0, rng.uniform(1e-6, 6.0));
  return d;
}

Record energy_record(const EnergyDraw& d) {
  return {{"M", d.params.mass_ratio}, {"E_B", d.params.binding_energy}, {"lambda", d.lambda},
          {"mu", d.mu}};
}

}  // namespace

CaseResult verify_bound_equation_decreasing(const VerifyOptions& opts) {
  return run_case("bound_equation_decreasing", CaseKind::kInequality, 0.0, opts.samples, opts,
                  [&](Rng& rng) {
                    const EnergyDraw d = draw_energy(rng);
                    const double alpha = alpha_of_mass(d.params.mass_ratio, opts.quad);
                    const double h = 1e-5 * std::abs(d.mu);
                    const double up = bound_equation_lhs(d.mu + h, d.lambda, d.params, alpha);
                    const double down = bound_equation_lhs(d.mu - h, d.lambda, d.params, alpha);
                    // Decreasing in mu: the value at mu + h must be the smaller one.
                    const double v = (up - down) / (std::abs(up) + std::abs(down) + kTiny);
                    return Outcome{v, energy_record(d)};
                  });
}

CaseResult verify_alpha_decreasing(const VerifyOptions& opts) {
  // Consecutive points of a log grid on [0.5, 50]; sample i compares i and i+1.
  const long n = std::max(opts.samples, 2L);
  auto mass_at = [n](long i) { return 0.5 * std::pow(100.0, static_cast<double>(i) / n); };
  const std::vector<double> alphas =
      parallel_map(static_cast<std::size_t>(n + 1), opts.threads, [&](std::size_t i) {
        return alpha_of_mass(mass_at(static_cast<long>(i)), opts.quad);
      });

  CaseResult res;
  res.name = "alpha_decreasing";
  res.kind = CaseKind::kInequality;
  res.tolerance = opts.tolerance.value_or(0.0);
  res.samples_run = n;
  res.max_violation = -std::numeric_limits<double>::infinity();
  long worst = 0;
  for (long i = 0; i < n; ++i) {
    const double v = (alphas[i + 1] - alphas[i]) / alphas[i];
    if (v > res.max_violation) {
      res.max_violation = v;
      worst = i;
    }
    if (v > 0.0 && v <= res.tolerance) ++res.slack_warnings;
  }
  res.worst_input = {{"M_left", mass_at(worst)}, {"M_right", mass_at(worst + 1)},
                     {"sample_index", static_cast<double>(worst)}};
  res.passed = res.max_violation <= res.tolerance;
  return res;
}

CaseResult verify_beta_kink(const VerifyOptions& opts) {
  return run_case("beta_kink", CaseKind::kIdentity, kAlgebraTol, opts.samples, opts, [&](Rng& rng) {
    const double m = rng.uniform(0.2, 50.0);
    const ModelParams params{m, -1.0};
    const double kink = beta_kink(m);
    const double below = beta_coefficient(std::nextafter(kink, 0.0), params);
    const double at = beta_coefficient(kink, params);
    const double above = beta_coefficient(std::nextafter(kink, 1.0), params);
    // Exactly 1 up to the kink; continuous (and at most 1) just past it.
    double v = std::max(std::abs(below - 1.0), std::abs(at - 1.0));
    v = std::max(v, std::abs(above - 1.0));
    if (above > 1.0) v = std::numeric_limits<double>::infinity();
    return Outcome{v, {{"M", m}, {"kink", kink}}};
  });
}

CaseResult verify_bound_equation_forms(const VerifyOptions& opts) {
  return run_case("bound_equation_forms", CaseKind::kIdentity, kAlgebraTol, opts.samples, opts,
                  [&](Rng& rng) {
                    EnergyDraw d = draw_energy(rng);
                    // Both forms are algebraic identities for any alpha; avoid the
                    // quadrature and draw it directly.
                    const double alpha = rng.uniform(0.0, 1.0);
                    d.params.mass_ratio = rng.uniform(0.2, 50.0);
                    const double a = bound_equation_lhs(d.mu, d.lambda, d.params, alpha);
                    const double b = bound_equation_lhs_rearranged(d.mu, d.lambda, d.params, alpha);
                    const double m = d.params.mass_ratio;
                    // Discrepancy measured against the size of the individual terms.
                    const double scale = std::abs(m / (m + 1.0) * std::log(d.mu / d.params.binding_energy)) +
                                         std::sqrt(d.lambda / -d.mu) + 1.0 +
                                         alpha * (1.0 + std::abs(std::log1p(-d.mu / d.lambda)));
                    Record rec = energy_record(d);
                    rec.emplace_back("alpha", alpha);
                    return Outcome{std::abs(a - b) / scale, std::move(rec)};
                  });
}

CaseResult verify_chain_equality(const VerifyOptions& opts) {
  return run_case("chain_equality", CaseKind::kIdentity, kAlgebraTol, opts.samples, opts,
                  [&](Rng& rng) {
                    const EnergyDraw d = draw_energy(rng);
                    const double alpha = alpha_of_mass(d.params.mass_ratio, opts.quad);
                    const double pre = chain_pre_minimization(0.0, d.mu, d.lambda, d.params, alpha);
                    const double eq = kPi * bound_equation_lhs(d.mu, d.lambda, d.params, alpha);
                    const double scale = kPi * (std::abs(std::log(d.mu / d.params.binding_energy)) +
                                                std::sqrt(d.lambda / -d.mu) + 1.0 +
                                                alpha * (1.0 + std::log1p(-d.mu / d.lambda)));
                    return Outcome{std::abs(pre - eq) / scale, energy_record(d)};
                  });
}

CaseResult verify_chain_inequality(const VerifyOptions& opts) {
  return run_case("chain_inequality", CaseKind::kInequality, kAlgebraTol, opts.samples,
                  opts, [&](Rng& rng) {
                    const EnergyDraw d = draw_energy(rng);
                    const double alpha = alpha_of_mass(d.params.mass_ratio, opts.quad);
                    const double eq = kPi * bound_equation_lhs(d.mu, d.lambda, d.params, alpha);
                    // Log grid tau in [1e-6, 1e6] |mu|.
                    constexpr int kTau = 49;
                    double worst = -std::numeric_limits<double>::infinity();
                    double worst_tau = 0.0;
                    for (int j = 0; j < kTau; ++j) {
                      const double tau = std::abs(d.mu) * std::pow(10.0, -6.0 + 12.0 * j / (kTau - 1));
                      const double pre = chain_pre_minimization(tau, d.mu, d.lambda, d.params, alpha);
                      const double v = (eq - pre) / std::max(std::abs(pre) + std::abs(eq), kTiny);
                      if (v > worst) {
                        worst = v;
                        worst_tau = tau;
                      }
                    }
                    Record rec = energy_record(d);
                    rec.emplace_back("tau", worst_tau);
                    return Outcome{worst, std::move(rec)};
                  });
}

VerificationReport run_suite(Suite suite, const VerifyOptions& opts) {
  VerificationReport report;
  auto want = [suite](Suite s) { return suite == Suite::kAll || suite == s; };
  if (want(Suite::kIntegrals)) {
    report.cases.push_back(verify_resolvent_integral(opts));
    report.cases.push_back(verify_disk_area(opts));
    report.cases.push_back(verify_sigma_minus(opts));
    report.cases.push_back(verify_weighted_kernel_closed_form(opts));
  }
  if (want(Suite::kInequalities)) {
    report.cases.push_back(verify_u_integral_bound(opts));
    report.cases.push_back(verify_mass_inequalities(opts));
    report.cases.push_back(verify_mass_inequality_sharpness(opts));
    report.cases.push_back(verify_rearrangement(opts));
    report.cases.push_back(verify_kernel_offset_bound(opts));
  }
  if (want(Suite::kMonotonicity)) {
    report.cases.push_back(verify_bound_equation_decreasing(opts));
    report.cases.push_back(verify_alpha_decreasing(opts));
    report.cases.push_back(verify_beta_kink(opts));
  }
  if (want(Suite::kChain)) {
    report.cases.push_back(verify_bound_equation_forms(opts));
    report.cases.push_back(verify_chain_equality(opts));
    report.cases.push_back(verify_chain_inequality(opts));
  }
  report.suite_passed = std::all_of(report.cases.begin(), report.cases.end(),
                                    [](const CaseResult& c) { return c.passed; });
  return report;
}

}  // namespace polaron2d

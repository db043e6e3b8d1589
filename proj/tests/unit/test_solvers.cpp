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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polaron2d/corefuncs.hpp"
#include "polaron2d/errors.hpp"
#include "polaron2d/solvers.hpp"

using namespace polaron2d;
using doctest::Approx;

TEST_CASE("solve_mu against bisection") {
  const BoundResult r = solve_mu({2.0, -1.0}, 1.0);
  CHECK(r.mu == Approx(oracle::mu_bisection(2.0, -1.0, 1.0)).epsilon(1e-10));
  CHECK(r.mu == Approx(-20.3122286253484).epsilon(1e-12));
  CHECK(r.mu < -1.0);
  CHECK(r.gamma == Approx(-r.mu));
  CHECK(std::abs(r.residual) <= 1e-10);

  oracle::Rng rng{3};
  for (int i = 0; i < 50; ++i) {
    const double m = rng.uniform(1.3, 50.0);
    const double eb = -rng.uniform(0.01, 100.0);
    const double lam = rng.uniform(0.01, 100.0);
    CAPTURE(m);
    CAPTURE(eb);
    CAPTURE(lam);
    const BoundResult s = solve_mu({m, eb}, lam);
    CHECK(s.mu == Approx(oracle::mu_bisection(m, eb, lam)).epsilon(1e-8));
    CHECK(s.mu < eb);
  }
}

TEST_CASE("scale covariance") {
  const double base = solve_mu({2.0, -1.0}, 1.0).mu;
  CHECK(solve_mu({2.0, -2.0}, 2.0).mu == Approx(2.0 * base).epsilon(1e-10));
  CHECK(solve_mu({2.0, -0.1}, 0.1).mu == Approx(0.1 * base).epsilon(1e-10));
}

TEST_CASE("solve_gamma") {
  CHECK(solve_gamma(2.0) == Approx(oracle::gamma_bisection(2.0)).epsilon(1e-10));
  CHECK(solve_gamma(2.0) == Approx(20.3122286253484).epsilon(1e-12));
  double prev = 1e300;
  for (double m : {1.3, 1.5, 2.0, 5.0, 20.0, 100.0}) {
    const double g = solve_gamma(m);
    CHECK(g > 1.0);
    CHECK(g < prev);
    prev = g;
    CHECK(g == Approx(-solve_mu({m, -1.0}, 1.0).mu).epsilon(1e-10));
  }
  CHECK_THROWS_AS(solve_gamma(1.0), SupercriticalMass);
  CHECK_THROWS_AS(solve_mu({1.2, -1.0}, 1.0), SupercriticalMass);
}

TEST_CASE("critical mass") {
  const CriticalMass cm = critical_mass();
  CHECK(cm.m_star == Approx(1.22413331873204).epsilon(1e-12));
  CHECK(cm.m_star <= 1.225);
  CHECK(cm.m_star >= 1.20);
  CHECK(std::abs(cm.m_star - oracle::critical_mass_scan()) <= 1e-4);
  CHECK(std::abs(cm.residual) < 1e-12);
  CHECK_THROWS_AS(critical_mass({}, 1.3, 1.5), BracketFailure);
}

TEST_CASE("optimized cutoff") {
  const ModelParams p{2.0, -1.0};
  const double a = alpha_of_mass(2.0);
  const BoundResult opt = optimize_lambda(p, default_cutoff_range(p), a);
  const BoundResult fixed = solve_mu(p, 1.0, a);
  CHECK(opt.optimized);
  CHECK(opt.mu >= fixed.mu);
  CHECK(opt.lambda_used == Approx(2.4768).epsilon(1e-4));
  CHECK(opt.mu == Approx(-17.8597).epsilon(1e-5));

  const oracle::LambdaScan grid = oracle::lambda_scan(2.0, -1.0, 1e-3, 1e3);
  CHECK(opt.mu >= grid.mu - 1e-10);
  const double spacing = std::log(1e6) / 199.0;
  CHECK(std::abs(std::log(opt.lambda_used / grid.lambda)) <= spacing);

  const ModelParams p3{2.0, -3.0};
  const BoundResult opt3 = optimize_lambda(p3, default_cutoff_range(p3), a);
  CHECK(opt3.lambda_used == Approx(3.0 * opt.lambda_used).epsilon(1e-6));
  CHECK(opt3.mu == Approx(3.0 * opt.mu).epsilon(1e-10));

  CHECK_THROWS_AS(optimize_lambda(p, {10.0, 100.0}, a), RangeError);
}

TEST_CASE("compute_bound dispatch") {
  const ModelParams p{5.0, -2.0};
  const double a = alpha_of_mass(5.0);
  CHECK(compute_bound(p, BindingScaleCutoff{}, a).lambda_used == 2.0);
  CHECK(compute_bound(p, FixedCutoff{0.5}, a).lambda_used == 0.5);
  CHECK(compute_bound(p, default_cutoff_range(p), a).optimized);
  CHECK_THROWS_AS(compute_bound(p, FixedCutoff{-1.0}, a), DomainError);
}

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
#include <numbers>

#include "polaron2d/corefuncs.hpp"
#include "polaron2d/verify.hpp"

using namespace polaron2d;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const QuadratureSpec kQuad{1e-13, 1e-300, 4000};
}  // namespace

TEST_CASE("resolvent radial integral") {
  CHECK(resolvent_radial_integral(1.0, -1.0, kQuad) == Approx(kPi / 2).epsilon(1e-12));
  CHECK(resolvent_radial_integral(2.0, -3.0, kQuad) == Approx(kPi / 5).epsilon(1e-12));
}

TEST_CASE("disk area") {
  CHECK(disk_area_cubature(1.0, kQuad) == Approx(kPi).epsilon(1e-12));
  CHECK(disk_area_cubature(4.0, kQuad) == Approx(4 * kPi).epsilon(1e-12));
}

TEST_CASE("sigma minus forms") {
  const SigmaMinusForms zero = sigma_minus_forms({1.0, 0.0}, {0.0, 2.0}, 1.0, 2.0, kQuad);
  CHECK(zero.difference == 0.0);
  CHECK(zero.integral == 0.0);
  CHECK(zero.closed == 0.0);
  const SigmaMinusForms same = sigma_minus_forms({0.7, -0.4}, {0.7, -0.4}, 0.0, 2.0, kQuad);
  CHECK(same.integral == Approx(same.closed).epsilon(1e-10));
  CHECK(same.difference == Approx(same.closed).epsilon(1e-10));
}

TEST_CASE("u-integral chain") {
  const UIntegralChain perp = u_integral_chain({1.0, 0.0}, {0.0, 1.0}, 1.5, 0.3, 2.0, kQuad);
  CHECK(perp.lhs == Approx(perp.middle).epsilon(1e-12));
  CHECK(perp.middle <= perp.final * (1 + 1e-12));
  const UIntegralChain big = u_integral_chain({1.0, 0.5}, {0.3, 1.0}, 1.2, 1e8, 2.0, kQuad);
  CHECK(big.lhs <= big.final);
  CHECK(big.final < 1e-8);
  CHECK(big.lhs < 1e-15);
}

TEST_CASE("mass inequalities and sharpness") {
  const MassInequality zero_shift = mass_inequality({1.0, 2.0}, {0.0, 0.0}, 0.4, 2.0);
  CHECK(zero_shift.left > zero_shift.middle);
  CHECK(zero_shift.middle >= zero_shift.right);
  const MassInequality m = mass_inequality({0.3, -1.1}, {2.0, 0.5}, 0.8, 3.0);
  CHECK(m.left_at_minimizer == Approx(m.middle).epsilon(1e-10));
  CHECK(m.left >= m.left_at_minimizer);
}

TEST_CASE("chain before minimization") {
  const ModelParams p{2.0, -1.0};
  const double a = alpha_of_mass(2.0);
  for (double mu : {-1.0, -5.0, -20.0}) {
    CHECK(chain_pre_minimization(0.0, mu, 1.0, p, a) ==
          Approx(kPi * bound_equation_lhs(mu, 1.0, p, a)).epsilon(1e-12));
  }
  CHECK(chain_pre_minimization(1e3, -2.0, 1.0, p, a) >
        kPi * bound_equation_lhs(-2.0, 1.0, p, a));
}

TEST_CASE("suites pass and are deterministic") {
  VerifyOptions opts;
  opts.samples = 300;
  opts.threads = 1;
  const VerificationReport one = run_suite(Suite::kAll, opts);
  CHECK(one.suite_passed);
  CHECK(one.cases.size() == 15);
  opts.threads = 4;
  const VerificationReport four = run_suite(Suite::kAll, opts);
  REQUIRE(four.cases.size() == one.cases.size());
  for (std::size_t i = 0; i < one.cases.size(); ++i) {
    CAPTURE(one.cases[i].name);
    CHECK(one.cases[i].passed);
    CHECK(one.cases[i].max_violation == four.cases[i].max_violation);
    CHECK(one.cases[i].worst_input == four.cases[i].worst_input);
  }
}

TEST_CASE("suite selection and impossible tolerance") {
  CHECK(parse_suite("chain") == Suite::kChain);
  CHECK_FALSE(parse_suite("nope").has_value());
  CHECK(suite_name(Suite::kMonotonicity) == "monotonicity");
  VerifyOptions opts;
  opts.samples = 20;
  CHECK(run_suite(Suite::kIntegrals, opts).cases.size() == 4);
  CHECK(run_suite(Suite::kInequalities, opts).cases.size() == 5);
  CHECK(run_suite(Suite::kMonotonicity, opts).cases.size() == 3);
  CHECK(run_suite(Suite::kChain, opts).cases.size() == 3);
  opts.tolerance = 1e-300;
  CHECK_FALSE(run_suite(Suite::kIntegrals, opts).suite_passed);
}

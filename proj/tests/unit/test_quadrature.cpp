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

#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polaron2d/errors.hpp"
#include "polaron2d/parallel.hpp"
#include "polaron2d/quadrature.hpp"

using namespace polaron2d;
using doctest::Approx;

TEST_CASE("smooth integrals") {
  const QuadratureSpec spec{1e-13, 1e-300, 2000};
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, spec).value ==
        Approx(2.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(x); }, 1.0, 0.0, spec).value ==
        Approx(1.0 - std::numbers::e).epsilon(1e-14));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, spec).value == 0.0);
}

TEST_CASE("tiny intervals converge in relative terms") {
  const QuadratureSpec spec{1e-13, 1e-300, 50};
  const auto r = integrate([](double) { return 1.0; }, -1e-9, 1e-9, spec);
  CHECK(r.value == Approx(2e-9).epsilon(1e-15));
}

TEST_CASE("breakpoints at kinks") {
  const QuadratureSpec spec{1e-12, 1e-300, 200};
  const std::array<double, 1> cut{0.3};
  const auto with = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, spec, cut);
  CHECK(with.value == Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
  CHECK(with.panels <= 2);
}

TEST_CASE("semi-infinite range") {
  const QuadratureSpec spec{1e-12, 1e-300, 2000};
  CHECK(integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 1.0, spec).value ==
        Approx(1.0).epsilon(1e-12));
  CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, spec).value ==
        Approx(1.0).epsilon(1e-12));
}

TEST_CASE("failures are reported") {
  const QuadratureSpec tight{1e-15, 1e-300, 5};
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tight),
                  QuadratureError);
  const QuadratureSpec spec;
  CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0, spec), QuadratureError);
}

TEST_CASE("parallel_map keeps order and propagates the first error") {
  for (unsigned t : {1u, 2u, 7u}) {
    const auto out = parallel_map(100, t, [](std::size_t i) { return static_cast<int>(i * i); });
    REQUIRE(out.size() == 100);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  }
  std::atomic<int> calls{0};
  try {
    parallel_map(50, 4, [&](std::size_t i) {
      ++calls;
      if (i == 13 || i == 40) throw std::runtime_error(std::to_string(i));
      return 0;
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "13");
  }
  CHECK(parallel_map(0, 4, [](std::size_t) { return 1; }).empty());
}

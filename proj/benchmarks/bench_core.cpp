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

#include <benchmark/benchmark.h>

#include "polaron2d/cconstant.hpp"
#include "polaron2d/corefuncs.hpp"
#include "polaron2d/solvers.hpp"
#include "polaron2d/verify.hpp"

using namespace polaron2d;

static void BM_AlphaOfMass(benchmark::State& state) {
  double m = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(alpha_of_mass(m));
  }
}
BENCHMARK(BM_AlphaOfMass);

static void BM_SolveMu(benchmark::State& state) {
  const ModelParams p{2.0, -1.0};
  const double a = alpha_of_mass(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_mu(p, 1.0, a).mu);
  }
}
BENCHMARK(BM_SolveMu);

static void BM_OptimizeLambda(benchmark::State& state) {
  const ModelParams p{2.0, -1.0};
  const double a = alpha_of_mass(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_lambda(p, default_cutoff_range(p), a).mu);
  }
}
BENCHMARK(BM_OptimizeLambda);

static void BM_CriticalMass(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(critical_mass().m_star);
  }
}
BENCHMARK(BM_CriticalMass);

static void BM_InnerIntegral(benchmark::State& state) {
  const CSearchConfig cfg;
  const ModelParams p{2.0, -1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(inner_integral({-1.6, 0.2}, {0.45, 0.0}, 0.01, cfg, p).value);
  }
}
BENCHMARK(BM_InnerIntegral)->Unit(benchmark::kMicrosecond);

static void BM_EstimateCCoarse(benchmark::State& state) {
  const CSearchConfig cfg = CSearchConfig::coarse();
  const ModelParams p{2.0, -1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_c(cfg, p, 1).value);
  }
}
BENCHMARK(BM_EstimateCCoarse)->Unit(benchmark::kMillisecond)->Iterations(2);

static void BM_VerifyAll(benchmark::State& state) {
  VerifyOptions opts;
  opts.samples = state.range(0);
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_suite(Suite::kAll, opts).suite_passed);
  }
}
BENCHMARK(BM_VerifyAll)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

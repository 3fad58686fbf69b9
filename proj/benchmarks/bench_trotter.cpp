// Copyright 2026 The subpulse Authors
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

#include "subpulse/exact_sim.hpp"
#include "subpulse/trotter.hpp"

using namespace subpulse;

static void BM_BuildFormula(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_formula(static_cast<int>(state.range(0)), 5));
}
BENCHMARK(BM_BuildFormula)->Arg(2)->Arg(4)->Arg(6);

static void BM_TightestBound(benchmark::State& state) {
  BoundQuery q;
  q.p = static_cast<int>(state.range(0));
  q.M = 5;
  q.Lambda = 5;
  q.T = 7;
  q.delta = 0.01;
  q.N = 75;
  q.n_tilde = 16;
  for (auto _ : state) benchmark::DoNotOptimize(tightest_bound(q));
}
BENCHMARK(BM_TightestBound)->Arg(1)->Arg(2)->Arg(4);

static void BM_InvertTightest(benchmark::State& state) {
  BoundQuery q;
  q.p = static_cast<int>(state.range(0));
  q.M = 5;
  q.Lambda = 5;
  q.T = 7;
  for (auto _ : state) benchmark::DoNotOptimize(invert_tightest(q, 0.1));
}
BENCHMARK(BM_InvertTightest)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

static void BM_CommutatorIntegral(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(state.range(0) ? commutator_integral_quadrature(3, 5.0, 0.05)
                                            : commutator_integral_series(3, 5.0, 0.05));
}
BENCHMARK(BM_CommutatorIntegral)->Arg(0)->Arg(1)->ArgName("quadrature");

// matrix-free Trotter step on the 2x2 compact lattice (10 qubits)
static void BM_TrotterApply(benchmark::State& state) {
  FermiHubbardSpec s;
  s.L = 2;
  const auto h = encode(s, Encoding::compact);
  const auto f = build_formula(static_cast<int>(state.range(0)), 5);
  Vector psi = Vector::Zero(std::int64_t{1} << h.n_qubits());
  psi[0] = 1.0;
  for (auto _ : state) {
    trotter_evolution_apply(f, h.layers, 0.05, 0.05, psi);
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_TrotterApply)->Arg(1)->Arg(2)->Arg(4);

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

#include "subpulse/pulse_synthesis.hpp"

using namespace subpulse;

static void BM_SynthesizeWeight(benchmark::State& state) {
  const PauliTerm t{PauliString::parse(std::string(state.range(0), 'Z')), 1.0};
  SynthesisOptions o;
  o.verify = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(t, 0.05, Strategy::subcircuit, o));
}
BENCHMARK(BM_SynthesizeWeight)->ArgsProduct({{3, 4}, {0, 1}})->ArgNames({"k", "verify"});

static void BM_Conjugation(benchmark::State& state) {
  const PauliTerm t{PauliString::parse("XYZZ"), 1.0};
  SynthesisOptions o;
  o.verify = false;
  for (auto _ : state) benchmark::DoNotOptimize(conjugation_decompose(t, 0.1, o, 1));
}
BENCHMARK(BM_Conjugation);

static void BM_Depth4Times(benchmark::State& state) {
  double t = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(depth4_times(t));
    t = t < 6.0 ? t + 0.01 : 0.01;
  }
}
BENCHMARK(BM_Depth4Times);

static void BM_OptimalitySearch(benchmark::State& state) {
  OptimalitySearchOptions o;
  o.budget = 20000;
  for (auto _ : state) benchmark::DoNotOptimize(optimality_search(3, static_cast<int>(state.range(0)), 0.1, o));
}
BENCHMARK(BM_OptimalitySearch)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

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

#include "subpulse/cost_analyzer.hpp"

using namespace subpulse;

static void BM_SimulationCost(benchmark::State& state) {
  CostQuery q;
  q.spec.L = 5;
  q.spec.fermion_count = 5;
  q.T = 7;
  q.encoding = state.range(0) ? Encoding::vc : Encoding::compact;
  q.strategy = Strategy::subcircuit;
  q.model = ErrorModel::per_time;
  for (auto _ : state) benchmark::DoNotOptimize(simulation_cost(q));
}
BENCHMARK(BM_SimulationCost)->Arg(0)->Arg(1)->ArgName("vc")->Unit(benchmark::kMillisecond);

static void BM_TableBenchmark(benchmark::State& state) {
  const TableConfig c = default_table_config();
  for (auto _ : state) benchmark::DoNotOptimize(table_benchmark(c));
}
BENCHMARK(BM_TableBenchmark)->Unit(benchmark::kMillisecond);

static void BM_Encode(benchmark::State& state) {
  FermiHubbardSpec s;
  s.L = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(encode(s, Encoding::compact));
}
BENCHMARK(BM_Encode)->Arg(3)->Arg(5)->Arg(8);

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

#include "subpulse/noise_lab.hpp"

using namespace subpulse;

namespace {

struct Setup {
  EncodedHamiltonian h;
  SyndromeMap map;
  NoiseSchedule sch;
  explicit Setup(int L) {
    FermiHubbardSpec s;
    s.L = L;
    s.fermion_count = 2;
    h = encode(s, Encoding::compact);
    map = build_syndrome_map(h);
    sch = build_noise_schedule(h, Strategy::subcircuit, ErrorModel::per_gate, 2, 0.05, 0.5);
  }
};

}  // namespace

static void BM_MonteCarlo(benchmark::State& state) {
  static const Setup s(3);
  MonteCarloOptions o;
  o.trials = 10000;
  const double q = state.range(0) == 3 ? 1e-3 : 1e-4;
  for (auto _ : state) benchmark::DoNotOptimize(run_monte_carlo(s.sch, s.map, {q, ErrorModel::per_gate}, o));
  state.SetItemsProcessed(state.iterations() * o.trials);
}
BENCHMARK(BM_MonteCarlo)->Arg(3)->Arg(4)->ArgName("neg_log10_q")->Unit(benchmark::kMillisecond);

static void BM_SyndromeMap(benchmark::State& state) {
  FermiHubbardSpec s;
  s.L = static_cast<int>(state.range(0));
  const auto h = encode(s, Encoding::compact);
  for (auto _ : state) benchmark::DoNotOptimize(build_syndrome_map(h));
}
BENCHMARK(BM_SyndromeMap)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

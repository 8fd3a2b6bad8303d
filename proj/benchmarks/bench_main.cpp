// Copyright 2026 The qvis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qvis/dist_core.hpp"
#include "qvis/quorum_pmf.hpp"
#include "qvis/sim.hpp"
#include "qvis/staleness.hpp"

namespace {

void BM_QuorumSizePmf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qvis::quorum_size_pmf({n, 1, 1}, qvis::Rate(1.0), 0.7));
  }
}
BENCHMARK(BM_QuorumSizePmf)->Arg(3)->Arg(10)->Arg(20);

void BM_AnalyticGeneralR2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qvis::DelayModel delays{qvis::Rate(1.0), qvis::Rate(2.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qvis::analytic_general_pt({n, 1, 2}, delays, 0.5));
  }
}
BENCHMARK(BM_AnalyticGeneralR2)->Arg(3)->Arg(10)->Arg(20);

void BM_SimTrial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qvis::QuorumSpec spec{n, 1, 2};
  const qvis::DelayModel delays{qvis::Rate(1.0), qvis::Rate(1.0)};
  qvis::sim::TrialRng rng(42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qvis::sim::run_trial(spec, delays, 0.0, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SimTrial)->Arg(3)->Arg(5)->Arg(20);

void BM_EstimatePt(benchmark::State& state) {
  const qvis::sim::SimConfig config{
      {3, 1, 1}, {qvis::Rate(1.0), qvis::Rate(1.0)}, 0.0,
      static_cast<std::uint64_t>(state.range(0)), 42, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qvis::sim::estimate_pt(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimatePt)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

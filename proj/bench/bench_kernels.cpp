/* Copyright 2026 The qsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference path vs the OpenMP path for the trial-level kernels.
// Both paths produce identical tallies; only wall time differs.

#include <benchmark/benchmark.h>

#include "qsim/noise.hpp"
#include "qsim/observable.hpp"
#include "qsim/protocol.hpp"

namespace {

using qsim::Execution;

Execution execution_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_DiscriminationTrials(benchmark::State& state) {
  qsim::DiscriminationConfig cfg;
  cfg.m = static_cast<int>(state.range(0));
  cfg.seed = 7;
  const std::uint64_t trials = 20'000;
  const qsim::MonteCarloOptions opts{std::nullopt, execution_of(state)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsim::monte_carlo_error_rate(cfg, trials, opts).tally.errors);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_DiscriminationTrials)
    ->ArgsProduct({{1, 6}, {0, 1}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_FixedChain(benchmark::State& state) {
  const qsim::Observable obs = qsim::perturbed_observable(0.4);
  const std::uint64_t samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsim::simulate_chain(obs, samples, 7, execution_of(state)).plus);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_FixedChain)->ArgsProduct({{100'000}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_NoisyChain(benchmark::State& state) {
  const qsim::NoiseModel model = qsim::NoiseModel::von_mises(2.0);
  const std::uint64_t samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsim::simulate_noisy_chain(model, samples, 7, execution_of(state)).plus);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_NoisyChain)->ArgsProduct({{100'000}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();

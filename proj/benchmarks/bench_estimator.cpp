// Copyright 2026 The pishadow developers
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

// Single-shot estimator throughput: the per-record cost that dominates
// dataset evaluation, in both operator bases.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "pishadow/channel.hpp"
#include "pishadow/estimate.hpp"
#include "pishadow/pibasis.hpp"
#include "pishadow/rng.hpp"
#include "pishadow/sim.hpp"

namespace {

using pishadow::Basis;
using pishadow::ChannelMatrix;
using pishadow::MeasurementRecord;
using pishadow::ObservableSpec;
using pishadow::PIVector;

std::vector<MeasurementRecord> sample_records(int n, std::size_t count) {
  std::vector<MeasurementRecord> records(count);
  for (std::size_t i = 0; i < count; ++i) {
    pishadow::RecordRng rng(17, i);
    records[i].theta = pishadow::sample_euler(rng);
    records[i].h = static_cast<int>(i % (n + 1));
  }
  return records;
}

void BM_SingleShotPauli(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChannelMatrix ch = pishadow::build_channel_pauli(n);
  const PIVector obs = pishadow::observable_to_pivector(
      ObservableSpec::axis_string('Z', n), n, Basis::PauliPI);
  const pishadow::ShotEvaluator ev(obs, ch);
  const auto records = sample_records(n, 512);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.evaluate(records[i]));
    i = (i + 1) % records.size();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SingleShotPauli)->Arg(4)->Arg(8)->Arg(16);

void BM_SingleShotSchur(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChannelMatrix ch =
      pishadow::build_channel_schur(n, std::vector<int>{-n, 0, n});
  const PIVector obs = pishadow::observable_to_pivector(
      ObservableSpec::ghz_projector(), n, Basis::SchurPI);
  const pishadow::ShotEvaluator ev(obs, ch);
  const auto records = sample_records(n, 512);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.evaluate(records[i]));
    i = (i + 1) % records.size();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SingleShotSchur)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_EvaluateAll(benchmark::State& state) {
  const int n = 16;
  const std::int64_t shots = state.range(0);
  const ChannelMatrix ch = pishadow::build_channel_schur(n);
  const PIVector obs = pishadow::observable_to_pivector(
      ObservableSpec::axis_string('Z', 2), n, Basis::SchurPI);
  const pishadow::ShotEvaluator ev(obs, ch);
  const pishadow::Dataset ds =
      pishadow::draw_dataset(pishadow::StateSpec::ghz(), n, shots, 29);
  for (auto _ : state) {
    std::vector<double> values = ev.evaluate_all(ds.records);
    benchmark::DoNotOptimize(values.data());
  }
  state.SetItemsProcessed(state.iterations() * shots);
}
BENCHMARK(BM_EvaluateAll)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ExactVariance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChannelMatrix ch = pishadow::build_channel_pauli(n);
  const PIVector obs = pishadow::observable_to_pivector(
      ObservableSpec::ghz_projector(), n, Basis::PauliPI);
  const PIVector rho = pishadow::ghz_state(n, Basis::PauliPI);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pishadow::exact_variance(obs, rho, ch));
  }
}
BENCHMARK(BM_ExactVariance)->Arg(4)->Arg(6)->Arg(8)
    ->Unit(benchmark::kMillisecond);

}  // namespace

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

// Measurement-channel construction and solve costs.

#include <benchmark/benchmark.h>

#include <vector>

#include "pishadow/channel.hpp"
#include "pishadow/pibasis.hpp"

namespace {

using pishadow::Basis;
using pishadow::ChannelMatrix;
using pishadow::PIVector;

void BM_BuildChannelPauli(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ChannelMatrix ch = pishadow::build_channel_pauli(n);
    benchmark::DoNotOptimize(ch.blocks.data());
  }
}
BENCHMARK(BM_BuildChannelPauli)->Arg(4)->Arg(8)->Arg(16)->Arg(32)
    ->Unit(benchmark::kMillisecond);

void BM_BuildChannelSchur(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ChannelMatrix ch = pishadow::build_channel_schur(n);
    benchmark::DoNotOptimize(ch.blocks.data());
  }
}
BENCHMARK(BM_BuildChannelSchur)->Arg(4)->Arg(8)->Arg(16)
    ->Unit(benchmark::kMillisecond);

// Only the sectors the GHZ projector and diagonal observables occupy; this
// is the configuration the benchmark command uses at large n.
void BM_BuildChannelSchurRestricted(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<int> deltas{-n, 0, n};
  for (auto _ : state) {
    ChannelMatrix ch = pishadow::build_channel_schur(n, deltas);
    benchmark::DoNotOptimize(ch.blocks.data());
  }
}
BENCHMARK(BM_BuildChannelSchurRestricted)->Arg(16)->Arg(32)->Arg(64)
    ->Unit(benchmark::kMillisecond);

void BM_ChannelSolvePauli(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChannelMatrix ch = pishadow::build_channel_pauli(n);
  const PIVector v = pishadow::ghz_state(n, Basis::PauliPI);
  for (auto _ : state) {
    PIVector x = pishadow::solve(ch, v);
    benchmark::DoNotOptimize(x.coeffs.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ChannelSolvePauli)->Arg(8)->Arg(16)->Arg(32);

void BM_ChannelSolveSchur(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChannelMatrix ch = pishadow::build_channel_schur(n);
  const PIVector v = pishadow::ghz_state(n, Basis::SchurPI);
  for (auto _ : state) {
    PIVector x = pishadow::solve(ch, v);
    benchmark::DoNotOptimize(x.coeffs.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ChannelSolveSchur)->Arg(8)->Arg(16);

}  // namespace

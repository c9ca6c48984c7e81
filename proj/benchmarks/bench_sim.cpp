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

// Sampler and rotation-kernel costs: the GHZ outcome law, dataset draws,
// and the Wigner machinery the Schur paths are built on.

#include <benchmark/benchmark.h>

#include <vector>

#include "pishadow/pibasis.hpp"
#include "pishadow/repcomb.hpp"
#include "pishadow/rng.hpp"
#include "pishadow/sim.hpp"

namespace {

using pishadow::EulerAngles;

void BM_GhzDistributionFast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  pishadow::RecordRng rng(3, 0);
  const EulerAngles theta = pishadow::sample_euler(rng);
  for (auto _ : state) {
    std::vector<double> p = pishadow::ghz_distribution_fast(n, theta);
    benchmark::DoNotOptimize(p.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GhzDistributionFast)->Arg(16)->Arg(64)->Arg(256);

void BM_DrawDatasetGhz(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::int64_t shots = 10000;
  std::uint64_t seed = 5;
  for (auto _ : state) {
    pishadow::Dataset ds =
        pishadow::draw_dataset(pishadow::StateSpec::ghz(), n, shots, seed++);
    benchmark::DoNotOptimize(ds.records.data());
  }
  state.SetItemsProcessed(state.iterations() * shots);
}
BENCHMARK(BM_DrawDatasetGhz)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_DrawDatasetBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::int64_t shots = 1000;
  std::uint64_t seed = 7;
  for (auto _ : state) {
    pishadow::Dataset ds = pishadow::draw_dataset_block(
        pishadow::StateSpec::ghz(), n, shots, seed++);
    benchmark::DoNotOptimize(ds.block_records.data());
  }
  state.SetItemsProcessed(state.iterations() * shots);
}
BENCHMARK(BM_DrawDatasetBlock)->Arg(8)->Arg(16)->Arg(32)
    ->Unit(benchmark::kMillisecond);

void BM_WignerRow(benchmark::State& state) {
  const int two_s = static_cast<int>(state.range(0));
  const pishadow::WignerTable& table = pishadow::WignerTable::shared(two_s);
  pishadow::WignerTable::Scratch scratch;
  Eigen::VectorXd row(table.size());
  double theta = 0.3;
  for (auto _ : state) {
    table.row(theta, two_s % 4 == 0 ? 0 : two_s, scratch, row);
    benchmark::DoNotOptimize(row.data());
    theta += 1e-4;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WignerRow)->Arg(16)->Arg(64)->Arg(128);

void BM_ClebschGordanTable(benchmark::State& state) {
  const int two_j = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Eigen::MatrixXd table =
        pishadow::clebsch_gordan_table(two_j, two_j, two_j);
    benchmark::DoNotOptimize(table.data());
  }
}
BENCHMARK(BM_ClebschGordanTable)->Arg(8)->Arg(40)->Arg(100)
    ->Unit(benchmark::kMicrosecond);

void BM_RotateSchur(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pishadow::PIVector v =
      pishadow::ghz_state(n, pishadow::Basis::SchurPI);
  pishadow::RecordRng rng(9, 1);
  const EulerAngles theta = pishadow::sample_euler(rng);
  for (auto _ : state) {
    pishadow::PIVector rotated = pishadow::rotate_schur(v, theta);
    benchmark::DoNotOptimize(rotated.coeffs.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RotateSchur)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

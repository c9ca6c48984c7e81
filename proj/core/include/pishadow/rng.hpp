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

#pragma once

#include <cstdint>
#include <random>

namespace pishadow {

/// splitmix64 finalizer; used to spread (seed, record) pairs into
/// well-separated mt19937_64 seeds.
std::uint64_t mix64(std::uint64_t z);

/// Deterministic per-record random stream. Every measurement record in a
/// dataset is generated from RecordRng(master_seed, record_index), so
/// records can be re-derived independently of sampling order or thread
/// count, and estimation can replay the exact draws that produced a record.
class RecordRng {
 public:
  RecordRng(std::uint64_t master_seed, std::uint64_t record_index);

  /// Uniform in [0, 1) with 53 random bits. Implemented directly on the
  /// engine output so streams are identical across standard libraries.
  double uniform();

  /// Standard normal via Box-Muller (no state carried between calls beyond
  /// the engine, so replay stays aligned).
  double normal();

  /// Uniform integer in [0, bound).
  std::uint32_t uniform_int(std::uint32_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace pishadow

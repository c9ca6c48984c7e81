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

#include "pishadow/rng.hpp"

#include <cmath>

namespace pishadow {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RecordRng::RecordRng(std::uint64_t master_seed, std::uint64_t record_index)
    : engine_(mix64(mix64(master_seed) ^
                    (record_index * 0xd1342543de82ef95ULL + 1))) {}

double RecordRng::uniform() {
  return double(engine_() >> 11) * 0x1.0p-53;
}

double RecordRng::normal() {
  // Box-Muller; the log argument is kept away from zero.
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(6.283185307179586477 * u2);
}

std::uint32_t RecordRng::uniform_int(std::uint32_t bound) {
  // Rejection-free scaling is fine here: bound is tiny (<= 24) compared to
  // the 53-bit uniform, so the bias is far below anything observable.
  auto v = static_cast<std::uint32_t>(uniform() * double(bound));
  return v < bound ? v : bound - 1;
}

}  // namespace pishadow

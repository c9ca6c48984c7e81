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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pishadow {

/// Raised when a computation leaves its guaranteed numerical envelope
/// (negative probabilities beyond tolerance, failed round trips, and so on),
/// as opposed to caller mistakes which raise std::invalid_argument.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

/// SHA-1 digest as 40 lowercase hex characters. Used for cache integrity
/// stamps, not for anything security-sensitive.
std::string sha1_hex(std::string_view bytes);

/// Whole-file read; throws std::runtime_error on failure.
std::string read_file(const std::string& path);

/// Write-to-temporary-then-rename so concurrent readers never observe a
/// partially written file.
void write_file_atomic(const std::string& path, std::string_view bytes);

}  // namespace pishadow

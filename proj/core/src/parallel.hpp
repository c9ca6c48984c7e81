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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pishadow::detail {

inline unsigned hardware_threads() {
  unsigned t = std::thread::hardware_concurrency();
  return t ? t : 1u;
}

/// Runs fn(begin, end) over contiguous chunks of [0, count) on up to
/// hardware_concurrency threads. The first exception thrown by any worker
/// is rethrown on the calling thread after all workers join.
inline void parallel_chunks(
    std::size_t count,
    const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  unsigned workers = std::min<std::size_t>(hardware_threads(), count);
  if (workers <= 1) {
    fn(0, count);
    return;
  }
  std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> threads;
  std::mutex err_mu;
  std::exception_ptr err;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t b = w * chunk;
    std::size_t e = std::min(count, b + chunk);
    if (b >= e) break;
    threads.emplace_back([&, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace pishadow::detail

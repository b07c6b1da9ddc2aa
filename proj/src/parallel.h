// Copyright 2026 The seqlab Authors.
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

#ifndef SEQLAB_SRC_PARALLEL_H_
#define SEQLAB_SRC_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace seqlab::internal {

// Runs fn(i) for i in [0, count) over `threads` workers in contiguous
// strides. Callers write results by index, so output never depends on the
// worker count.
template <typename Fn>
void ParallelFor(std::size_t count, int threads, Fn&& fn) {
  std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, count ? count : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * chunk; i < std::min(count, (w + 1) * chunk); ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace seqlab::internal

#endif  // SEQLAB_SRC_PARALLEL_H_

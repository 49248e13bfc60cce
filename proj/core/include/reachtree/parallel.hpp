/*
 Copyright 2026 The reachtree Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef REACHTREE_PARALLEL_HPP
#define REACHTREE_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace reachtree {

// Worker count used when an options struct leaves `threads` at 0.
inline unsigned default_threads() {
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries
// depend only on n and the worker count and every index is written by exactly
// one chunk, so callers that write per-index results get identical output for
// any worker count. The first exception thrown by a worker is rethrown.
template <typename Fn>
void parallel_for_chunks(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = default_threads();
    constexpr std::size_t min_chunk = 256;
    const std::size_t workers =
        std::min<std::size_t>(threads, (n + min_chunk - 1) / min_chunk);
    if (workers <= 1) {
        if (n > 0) fn(std::size_t{0}, n);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    parallel_for_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
    });
}

}  // namespace reachtree

#endif  // REACHTREE_PARALLEL_HPP

/**
 * Copyright 2026 The multislit Authors
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


#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace multislit {

/// Worker count from MULTISLIT_THREADS, falling back to the hardware concurrency.
std::size_t default_thread_count();

/**
 * Splits [0, n) into `parts` contiguous chunks, evaluates `chunk(begin, end)` for
 * each on its own thread, and returns the per-chunk results in chunk order.
 * Callers combine the results sequentially, so the reduction order depends only
 * on `parts`.
 */
template <class ChunkFn>
auto parallel_chunks(std::size_t n, std::size_t parts, ChunkFn chunk) {
    using Result = decltype(chunk(std::size_t{0}, std::size_t{0}));
    parts = std::max<std::size_t>(1, std::min(parts, std::max<std::size_t>(n, 1)));
    std::vector<Result> results(parts);
    if (parts == 1) {
        results[0] = chunk(0, n);
        return results;
    }
    std::vector<std::exception_ptr> errors(parts);
    {
        std::vector<std::jthread> workers;
        workers.reserve(parts);
        for (std::size_t p = 0; p < parts; ++p) {
            const std::size_t begin = n * p / parts;
            const std::size_t end = n * (p + 1) / parts;
            workers.emplace_back([&, p, begin, end] {
                try {
                    results[p] = chunk(begin, end);
                } catch (...) {
                    errors[p] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace multislit

/*
   Copyright 2026 The preserverlab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

namespace preserverlab {

inline constexpr std::uint64_t kNoIndex = std::numeric_limits<std::uint64_t>::max();

/// Smallest i in [0, count) with violates(i), or kNoIndex.
///
/// The range is cut into fixed chunks handed out in increasing order, so the
/// answer does not depend on `jobs`. Workers skip chunks that start past the
/// best index found so far. `violates` must be safe to call concurrently.
inline std::uint64_t parallel_first_index(std::uint64_t count, unsigned jobs,
                                          const std::function<bool(std::uint64_t)>& violates,
                                          std::uint64_t chunk = 4096) {
    if (count == 0) return kNoIndex;
    if (jobs <= 1 || count <= chunk) {
        for (std::uint64_t i = 0; i < count; ++i)
            if (violates(i)) return i;
        return kNoIndex;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{kNoIndex};
    auto worker = [&] {
        while (true) {
            std::uint64_t start = next.fetch_add(chunk);
            if (start >= count || start >= best.load()) return;
            std::uint64_t end = std::min(count, start + chunk);
            for (std::uint64_t i = start; i < end; ++i) {
                if (i >= best.load()) break;
                if (violates(i)) {
                    std::uint64_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                    break;
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return best.load();
}

/// out[i] = fn(i) for i in [0, count); workers take indices in increasing
/// order and each slot is written once, so the result does not depend on `jobs`.
template <class R>
std::vector<R> parallel_map(std::uint64_t count, unsigned jobs, const std::function<R(std::uint64_t)>& fn) {
    std::vector<R> out(count);
    if (jobs <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) out[i] = fn(i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::uint64_t>(jobs, count); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace preserverlab

#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace hive {

inline int hardware_threads() {
    const unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

// Static block partition of [0, count) over at most `threads` workers.
// Results must be written to disjoint slots; reductions are the caller's
// job so that summation order stays deterministic.
inline void parallel_for(int count, const std::function<void(int)>& body, int threads = 0) {
    if (threads <= 0) threads = hardware_threads();
    threads = std::min(threads, std::max(1, count));
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int lo = t * chunk;
        const int hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace hive

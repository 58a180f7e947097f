#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sgd {

// Worker cap: SGDECOHERE_THREADS when set, hardware concurrency otherwise.
inline int max_threads()
{
    if (const char* env = std::getenv("SGDECOHERE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static range split over [0, n). Chunk assignment is deterministic; callers
// must keep chunks independent so results do not depend on scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body)
{
    const int threads = std::min<std::size_t>(max_threads(), n == 0 ? 1 : n);
    if (threads <= 1 || n < 2) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& th : pool) th.join();
}

} // namespace sgd

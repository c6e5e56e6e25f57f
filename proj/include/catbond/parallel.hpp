#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace catbond {

// Effective worker count: `requested` if positive, otherwise the hardware
// count, in both cases capped by the CATBOND_THREADS environment variable.
inline int thread_budget(int requested = 0) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* cap = std::getenv("CATBOND_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1) n = std::min(n, c);
    }
    return n;
}

// Runs fn(begin, end) over contiguous chunks of [0, n). Results must be
// written to per-index slots; aggregation happens after the join, so the
// outcome does not depend on the number of workers.
template <class Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
    const int workers = std::min<std::size_t>(thread_budget(threads), std::max<std::size_t>(n, 1));
    if (workers <= 1 || n < 2) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace catbond

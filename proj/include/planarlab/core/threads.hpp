#pragma once

// parallel_for_chunks: static partition of [0, n) across `workers` threads.
// Callers must make per-index work independent of the partition (e.g. by
// keying RNG streams on the index) so results do not depend on `workers`.

#include <cstddef>
#include <thread>
#include <vector>

namespace planarlab {

template <class Fn>
void parallel_for_chunks(std::size_t n, unsigned workers, Fn&& fn) {
    if (workers <= 1 || n < 2) {
        fn(std::size_t(0), n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = std::size_t(w) * chunk;
        if (lo >= n) break;
        std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace planarlab

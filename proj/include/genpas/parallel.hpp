#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace genpas {

/** Worker cap from GENPAS_THREADS (0 or unset = hardware concurrency). */
unsigned thread_count();

/**
 * Runs fn(i) for i in [0, n). Work is split into contiguous blocks over the
 * configured worker count; callers must write results into per-index slots and
 * reduce in index order afterwards so the outcome is independent of the degree
 * of parallelism.
 */
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned workers = thread_count();
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t used = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(used);
    const std::size_t chunk = (n + used - 1) / used;
    for (std::size_t w = 0; w < used; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace genpas

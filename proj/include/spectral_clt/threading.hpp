#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace spectral_clt {

// Thread cap resolution order: programmatic override, SPECTRAL_CLT_THREADS,
// hardware concurrency. Never returns 0.
inline int& thread_override() {
    static int v = 0;
    return v;
}

inline void set_thread_count(int n) { thread_override() = n; }

inline int thread_count() {
    if (thread_override() > 0) return thread_override();
    if (const char* env = std::getenv("SPECTRAL_CLT_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, count). Each index is processed exactly once; the
// partition of indices into contiguous chunks depends only on `count` and the
// resolved thread cap, and callers must write results to per-index slots, so
// output is identical for any thread count.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    int nthreads = std::min<std::size_t>(thread_count(), count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace spectral_clt

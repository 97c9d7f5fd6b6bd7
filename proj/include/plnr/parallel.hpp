#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "plnr/common.hpp"

namespace plnr {

// Worker count: PLNR_THREADS env var wins, else hardware concurrency, min 1.
inline unsigned worker_count() {
    if (const char* env = std::getenv("PLNR_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1u;
}

// Splits [0, n) into contiguous chunks, one worker thread per chunk.
// Runs inline when a single worker suffices. Results must be written to
// per-index slots by the caller so the assembly order is deterministic.
template <typename Fn>
void parallel_chunks(u64 n, Fn&& fn, unsigned workers = 0) {
    if (workers == 0) workers = worker_count();
    if (n == 0) return;
    if (workers <= 1 || n < 2) {
        fn(u64{0}, n);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    u64 chunk = n / workers, extra = n % workers, begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        u64 len = chunk + (w < extra ? 1 : 0);
        pool.emplace_back([&fn, begin, len] { fn(begin, begin + len); });
        begin += len;
    }
    for (auto& t : pool) t.join();
}

} // namespace plnr

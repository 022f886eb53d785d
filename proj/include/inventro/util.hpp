#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace inventro {

/// Decimal form with 17 significant digits: round-trips doubles bit-exactly.
inline std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Chunked parallel map over [0, n): fn(begin, end line) per chunk. With
/// threads <= 1 the call runs inline. Chunk boundaries depend only on n and
/// the thread count, so writers into disjoint per-index slots stay
/// deterministic.
inline void parallel_for(int64_t n, int threads,
                         const std::function<void(int64_t, int64_t)>& fn) {
    if (threads <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    int workers = static_cast<int>(std::min<int64_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    int64_t chunk = (n + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        int64_t b = t * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, b, e);
    }
    for (auto& th : pool) th.join();
}

inline int default_thread_count() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace inventro

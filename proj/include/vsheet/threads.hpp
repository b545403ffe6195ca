#pragma once

// Minimal data-parallel helper: chunked parallel_for over an index range.
// A process-wide worker cap is set once by the CLI (--threads) and respected
// by every call site; default is std::thread::hardware_concurrency().

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace vsheet {

inline int& thread_cap() {
    static int cap = 0; // 0 = use hardware concurrency
    return cap;
}

inline void set_thread_cap(int n) { thread_cap() = n; }

inline int effective_threads(std::size_t work_items) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int cap = thread_cap() > 0 ? thread_cap() : hw;
    return static_cast<int>(std::min<std::size_t>(cap, std::max<std::size_t>(1, work_items)));
}

// fn(first, last) is called on disjoint subranges of [0, n).
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int nt = effective_threads(n);
    if (nt <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(fn, lo, hi);
    }
    for (auto& th : pool) th.join();
}

} // namespace vsheet

#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace transcend {

// Worker cap: TRANSCEND_THREADS when set, hardware concurrency otherwise.
inline unsigned worker_count() {
    if (const char* env = std::getenv("TRANSCEND_THREADS")) {
        long n = std::atol(env);
        if (n >= 1) return static_cast<unsigned>(n > 256 ? 256 : n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// out[i] = fn(i) for i in [0, n).  Results are keyed by index and exceptions
// are rethrown for the smallest failing index, so the outcome is independent
// of scheduling.  R must be default-constructible.
template <class R, class F>
std::vector<R> parallel_map(size_t n, F fn) {
    std::vector<R> out(n);
    size_t workers = worker_count();
    if (workers > n) workers = n;
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errs(n);
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    out[i] = fn(i);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (size_t i = 0; i < n; ++i)
        if (errs[i]) std::rethrow_exception(errs[i]);
    return out;
}

} // namespace transcend

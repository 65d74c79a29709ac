#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace streamlens {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(0..n-1) across `workers` threads. Each index must be an independent
// work unit writing only to its own slot; under that contract the outcome is
// identical for any worker count. The lowest-index exception is rethrown.
inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
    workers = resolve_workers(workers);
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();

    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace streamlens

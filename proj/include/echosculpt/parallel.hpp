#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace echosculpt {

// Worker cap: ECHO_SCULPT_THREADS when set, hardware concurrency otherwise.
int worker_count();

// Runs fn(0..n-1), possibly concurrently. Callers keep determinism by
// writing results into per-index slots and reducing in index order.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace echosculpt

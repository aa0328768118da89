#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace revcap {

// Order-independent work distribution over [0, n); results must be written to
// per-index slots so output assembly stays deterministic for any job count.
inline void parallel_for_index(int n, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min(jobs, n);
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace revcap

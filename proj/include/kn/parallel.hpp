#pragma once

/// Minimal deterministic parallel loop.  The thread count comes from the
/// KNC_THREADS environment variable (default 1 = sequential); results must be
/// written to per-index slots so the merge order never depends on timing.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace kn {

inline int configured_threads() {
    if (const char* env = std::getenv("KNC_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) {
            const int hw = static_cast<int>(std::thread::hardware_concurrency());
            return hw > 0 ? std::min(n, hw) : n;
        }
    }
    return 1;
}

inline void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    const int threads = configured_threads();
    if (threads <= 1 || count < 2) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<size_t>(static_cast<size_t>(threads), count);
    pool.reserve(static_cast<size_t>(spawn));
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace kn

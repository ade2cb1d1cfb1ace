#include "rcons/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rcons {

int max_threads() {
    static const int cached = [] {
        if (const char* env = std::getenv("ROBUST_CONSENSUS_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<int>(v);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw ? static_cast<int>(hw) : 1;
    }();
    return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int workers = max_threads();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int spawn = static_cast<int>(std::min<std::size_t>(workers, n)) - 1;
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

void parallel_chunks(std::size_t n, std::size_t n_chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n_chunks == 0) n_chunks = 1;
    if (n_chunks > n && n > 0) n_chunks = n;
    const std::size_t base = n_chunks ? n / n_chunks : 0;
    const std::size_t rem = n_chunks ? n % n_chunks : 0;
    parallel_for(n_chunks, [&](std::size_t c) {
        const std::size_t begin = c * base + std::min(c, rem);
        const std::size_t end = begin + base + (c < rem ? 1 : 0);
        fn(c, begin, end);
    });
}

} // namespace rcons

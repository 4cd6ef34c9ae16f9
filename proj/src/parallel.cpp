#include "fracbq/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace fracbq {

int worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("FRACBQ_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap > 0) n = std::min(n, cap);
        } catch (...) {
            // ignore malformed values, keep the hardware default
        }
    }
    return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body) {
    if (count == 0) return;
    const int workers = worker_count();
    if (workers <= 1 || count < 2) {
        body(0, count);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(count, static_cast<std::size_t>(workers));
    const std::size_t per = (count + chunks - 1) / chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = c * per;
        const std::size_t hi = std::min(count, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace fracbq

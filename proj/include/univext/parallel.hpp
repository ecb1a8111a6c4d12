#ifndef UNIVEXT_PARALLEL_HPP
#define UNIVEXT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace univext {

/// Worker count: UNIVEXT_THREADS if set and positive, otherwise the
/// hardware concurrency.
inline unsigned worker_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("UNIVEXT_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return hw;
}

/// True iff pred(i) holds for every i in [0, count). Work is split into
/// contiguous chunks; workers stop early once any chunk fails.
template <typename Pred>
bool parallel_all_of(std::size_t count, Pred pred)
{
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            if (!pred(i)) return false;
        return true;
    }
    std::atomic<bool> ok{true};
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk, end = std::min(count, begin + chunk);
        pool.emplace_back([&, begin, end] {
            for (std::size_t i = begin; i < end && ok.load(std::memory_order_relaxed); ++i)
                if (!pred(i)) ok.store(false, std::memory_order_relaxed);
        });
    }
    for (auto& t : pool) t.join();
    return ok.load();
}

} // namespace univext

#endif

#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rabi {

// Worker count: DRESSED_RABI_THREADS caps it, 0 or unset means auto.
inline unsigned thread_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DRESSED_RABI_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return hw;
}

// Static block partition of [0, count); deterministic regardless of schedule
// as long as the body only writes to its own indices.
template <class Body>
void parallel_for(std::size_t count, Body&& body)
{
    unsigned nt = thread_count();
    if (nt <= 1 || count < 256) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    nt = static_cast<unsigned>(std::min<std::size_t>(nt, count));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = (count + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i)
                body(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace rabi

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace wt {

// Calls body(i) for i in [0, n) on up to `threads` workers pulling fixed-size chunks.
// Each index must write only its own output slot, so results do not depend on scheduling.
// The exception from the lowest failing chunk is rethrown.
template <class F>
void parallel_for(std::size_t n, int threads, F&& body, std::size_t chunk = 256)
{
    threads = std::max(1, threads);
    if (threads == 1 || n <= chunk) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errs(nchunks);
    auto work = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            try {
                for (std::size_t i = c * chunk, e = std::min(n, i + chunk); i < e; ++i) body(i);
            } catch (...) {
                errs[c] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace wt

#pragma once

// Deterministic data parallelism: work is split into fixed-size chunks whose
// boundaries do not depend on the thread count, so per-chunk results can be
// combined in chunk order and the output is identical for any --threads value.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace momentlab::parallel {

int default_threads();
void set_default_threads(int n);

// Calls body(chunk_index, begin, end) for chunks [k*chunk, min((k+1)*chunk, n)).
// Bodies for distinct chunks may run concurrently; the caller owns any
// per-chunk output slots.
template <class Body>
void for_chunks(std::int64_t n, std::int64_t chunk, Body&& body, int threads = 0) {
    if (n <= 0) return;
    if (chunk <= 0) chunk = 1;
    const std::int64_t n_chunks = (n + chunk - 1) / chunk;
    if (threads <= 0) threads = default_threads();
    if (threads > n_chunks) threads = static_cast<int>(n_chunks);

    if (threads <= 1) {
        for (std::int64_t k = 0; k < n_chunks; ++k)
            body(k, k * chunk, std::min<std::int64_t>((k + 1) * chunk, n));
        return;
    }

    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::int64_t k = next.fetch_add(1, std::memory_order_relaxed);
            if (k >= n_chunks) return;
            body(k, k * chunk, std::min<std::int64_t>((k + 1) * chunk, n));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

} // namespace momentlab::parallel

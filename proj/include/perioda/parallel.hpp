#pragma once

// Deterministic fan-out for Monte Carlo loops.
//
// Runs are split into fixed-size blocks; workers claim blocks atomically and
// each block accumulates into its own slot. Slots are merged in block order
// after all workers join, so totals are byte-identical for any thread count.

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace perioda {

inline unsigned default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// fn(run_index, block_accumulator) is invoked for every run in [0, runs);
// Acc must be default-constructible and mergeable via merge(total, block).
template <typename Acc, typename Fn, typename Merge>
Acc run_blocks(std::uint64_t runs, Fn fn, Merge merge, std::uint64_t block_size = 1024,
               unsigned workers = default_workers()) {
    if (block_size == 0) block_size = 1;
    std::uint64_t num_blocks = (runs + block_size - 1) / block_size;
    std::vector<Acc> partial(num_blocks);
    std::atomic<std::uint64_t> next{0};

    auto work = [&]() {
        for (;;) {
            std::uint64_t b = next.fetch_add(1);
            if (b >= num_blocks) return;
            std::uint64_t lo = b * block_size;
            std::uint64_t hi = std::min(runs, lo + block_size);
            Acc acc{};
            for (std::uint64_t i = lo; i < hi; ++i) fn(i, acc);
            partial[b] = std::move(acc);
        }
    };

    if (workers <= 1 || num_blocks <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        unsigned n = std::min<std::uint64_t>(workers, num_blocks);
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    Acc total{};
    for (auto& p : partial) merge(total, p);
    return total;
}

}  // namespace perioda

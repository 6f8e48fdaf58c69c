#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace subtile {

// Runs fn(i) for i in [0,n) on up to `threads` workers. Callers store
// results by index, so the outcome is identical for any thread count.
template <class F>
void parallel_for(size_t n, int threads, F&& fn) {
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    size_t workers = std::min<size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += workers) fn(i);
        });
    for (std::thread& t : pool) t.join();
}

// Deterministic reduction: fixed binary tree over the index order, so sums
// do not depend on scheduling.
inline double pairwise_sum(const double* a, size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0;
        for (size_t i = 0; i < n; ++i) s += a[i];
        return s;
    }
    size_t h = n / 2;
    return pairwise_sum(a, h) + pairwise_sum(a + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace subtile

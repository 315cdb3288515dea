// parallel.hpp — bounded thread parallelism with thread-count-independent results
//
// DUODECAY_THREADS caps the worker count. Reductions use fixed-size blocks
// combined in index order, so results do not depend on how many threads ran.

#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "duodecay/common.hpp"

namespace duodecay::num {

inline int max_threads() {
    static const int n = [] {
        unsigned hw = std::thread::hardware_concurrency();
        int def = hw == 0 ? 1 : static_cast<int>(hw);
        if (const char* env = std::getenv("DUODECAY_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) def = std::min(def, v);
        }
        return std::max(1, def);
    }();
    return n;
}

// Runs fn(i) for i in [0, n). Blocks until done.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int nt = std::min<std::size_t>(max_threads(), n == 0 ? 1 : n);
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    for (int t = 0; t + 1 < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

inline constexpr std::size_t kDotBlock = 2048;

// conj(a) . b with a fixed blockwise summation order
inline cplx deterministic_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const std::size_t n = a.size();
    const std::size_t nb = (n + kDotBlock - 1) / kDotBlock;
    std::vector<cplx> partial(nb, cplx{0.0, 0.0});
    parallel_for(nb, [&](std::size_t ib) {
        const std::size_t lo = ib * kDotBlock;
        const std::size_t hi = std::min(n, lo + kDotBlock);
        cplx s{0.0, 0.0};
        for (std::size_t i = lo; i < hi; ++i) s += std::conj(a[i]) * b[i];
        partial[ib] = s;
    });
    cplx s{0.0, 0.0};
    for (const auto& p : partial) s += p;
    return s;
}

inline double deterministic_norm2(const std::vector<cplx>& a) {
    const std::size_t n = a.size();
    const std::size_t nb = (n + kDotBlock - 1) / kDotBlock;
    std::vector<double> partial(nb, 0.0);
    parallel_for(nb, [&](std::size_t ib) {
        const std::size_t lo = ib * kDotBlock;
        const std::size_t hi = std::min(n, lo + kDotBlock);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::norm(a[i]);
        partial[ib] = s;
    });
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

}  // namespace duodecay::num

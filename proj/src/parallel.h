#ifndef QNETLIM_SRC_PARALLEL_H
#define QNETLIM_SRC_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qnetlim::detail {

inline int worker_count(int jobs) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    return std::max(1, std::min(hw, jobs));
}

// Calls fn(worker, i) for i in [0, n). Work items are claimed dynamically, so
// callers must only combine results in an order-independent way.
template <typename Fn>
void parallel_for(int n, Fn fn, int min_parallel = 64) {
    if (n < min_parallel) {
        for (int i = 0; i < n; i++) fn(0, i);
        return;
    }
    int workers = worker_count(n);
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; w++) {
        threads.emplace_back([&, w] {
            try {
                for (int i = next++; i < n; i = next++) fn(w, i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                next = n;
            }
        });
    }
    for (auto &t : threads) t.join();
    if (err) std::rethrow_exception(err);
}

inline int parallel_workers(int n, int min_parallel = 64) {
    return n < min_parallel ? 1 : worker_count(n);
}

}  // namespace qnetlim::detail

#endif

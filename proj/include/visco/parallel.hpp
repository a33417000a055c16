#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace visco {

// Index-based parallel for. Work items are claimed from a shared counter and
// results must be written to per-index slots, so output is independent of the
// thread count and of completion order.
template <typename F>
void parallel_for(int n, int jobs, F&& body) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    const int n_workers = std::min(jobs, n);
    workers.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) {
        workers.emplace_back([&] {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        });
    }
    for (auto& th : workers) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace visco

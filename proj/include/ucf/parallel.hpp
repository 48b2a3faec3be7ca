#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ucf {

/// Runs task(i) for i in [0, count) on up to `workers` threads, handing out
/// indices in increasing order. The first exception thrown by any task is
/// rethrown after all threads have joined; remaining indices are skipped.
template <typename Task>
void parallel_for_index(std::size_t count, unsigned workers, Task&& task) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    const auto body = [&] {
        for (std::size_t i = next++; i < count && !failed.load(); i = next++) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const std::size_t threads = std::min<std::size_t>(workers, count);
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(body);
    }
    if (error) std::rethrow_exception(error);
}

} // namespace ucf

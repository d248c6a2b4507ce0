#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace kh {

// Runs fn(k) for k in [0, count) across threads.  Work items must be
// independent; results land in caller-owned slots so the outcome does not
// depend on scheduling.
inline void parallel_for(int count, const std::function<void(int)>& fn, int threads = 0) {
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1 || count <= 1) {
        for (int k = 0; k < count; ++k)
            fn(k);
        return;
    }
    threads = std::min(threads, count);
    std::atomic<int> next{0};
    std::exception_ptr first_error = nullptr;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                int k = next.fetch_add(1);
                if (k >= count)
                    return;
                try {
                    fn(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

}

// SPDX-License-Identifier: Apache-2.0

#include "matbench/core/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace matbench {

namespace {
std::atomic<int> g_thread_override{0};
}

void set_default_thread_count(int threads) { g_thread_override.store(threads > 0 ? threads : 0); }

int default_thread_count() {
    if (const int n = g_thread_override.load(); n > 0) return n;
    if (const char *env = std::getenv("MATBENCH_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)> &body) {
    if (threads <= 0) threads = default_thread_count();
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace matbench

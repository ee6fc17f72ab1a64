// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#include "bellkit/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bellkit {

namespace {

std::size_t hardware_threads() noexcept
{
    return std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
}

std::atomic<std::size_t> g_threads{hardware_threads()};

}  // namespace

std::size_t thread_count() noexcept { return g_threads.load(); }

void set_thread_count(std::size_t n) noexcept { g_threads.store(n == 0 ? hardware_threads() : n); }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body)
{
    if (end <= begin) {
        return;
    }
    const std::size_t total = end - begin;
    const std::size_t workers = std::min(thread_count(), total);
    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i) {
            body(i);
        }
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + w * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace bellkit

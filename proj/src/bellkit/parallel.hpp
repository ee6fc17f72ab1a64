// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace bellkit {

/// Number of worker threads used by parallel_for. Defaults to the hardware
/// concurrency; set_thread_count(0) restores that default.
std::size_t thread_count() noexcept;
void set_thread_count(std::size_t n) noexcept;

/// Runs body(i) for i in [begin, end), split into contiguous chunks across
/// thread_count() threads. body must only write to index-private state.
/// Exceptions thrown by any chunk are rethrown on the caller's thread.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace bellkit

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace matbench {

/// Worker count used when a caller passes 0: the value set by
/// set_default_thread_count, else MATBENCH_THREADS, else the hardware
/// concurrency.
int default_thread_count();
/// Process-wide override; 0 clears it.
void set_default_thread_count(int threads);

/// Runs body(i) for i in [0, count) on `threads` workers pulling indices from
/// a shared counter. Exceptions from any worker are rethrown on the caller.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)> &body);

}  // namespace matbench

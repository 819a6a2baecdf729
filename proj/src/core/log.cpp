// SPDX-License-Identifier: Apache-2.0

#include "matbench/core/log.hpp"

#include <atomic>

namespace matbench::log {

namespace {
std::atomic<int> g_level{static_cast<int>(Level::warning)};
}

Level level() { return static_cast<Level>(g_level.load(std::memory_order_relaxed)); }
void set_level(Level lvl) { g_level.store(static_cast<int>(lvl), std::memory_order_relaxed); }

}  // namespace matbench::log

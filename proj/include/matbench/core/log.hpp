// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fmt/core.h>

#include <cstdio>
#include <utility>

namespace matbench::log {

enum class Level { error = 0, warning = 1, info = 2, debug = 3 };

Level level();
void set_level(Level level);

template <typename... Args>
void write(Level lvl, const char *tag, fmt::format_string<Args...> f, Args &&...args) {
    if (static_cast<int>(lvl) > static_cast<int>(level())) return;
    fmt::print(stderr, "[{}] {}\n", tag, fmt::format(f, std::forward<Args>(args)...));
}

template <typename... Args>
void error(fmt::format_string<Args...> f, Args &&...args) {
    write(Level::error, "error", f, std::forward<Args>(args)...);
}
template <typename... Args>
void warn(fmt::format_string<Args...> f, Args &&...args) {
    write(Level::warning, "warning", f, std::forward<Args>(args)...);
}
template <typename... Args>
void info(fmt::format_string<Args...> f, Args &&...args) {
    write(Level::info, "info", f, std::forward<Args>(args)...);
}
template <typename... Args>
void debug(fmt::format_string<Args...> f, Args &&...args) {
    write(Level::debug, "debug", f, std::forward<Args>(args)...);
}

}  // namespace matbench::log

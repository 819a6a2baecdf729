// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace matbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Runs the command line (args exclude the program name) and returns the
/// process exit code: 0 success, 1 invalid input or usage, 2 runtime failure.
int run(const std::vector<std::string> &args);

}  // namespace matbench::cli

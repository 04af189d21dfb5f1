#pragma once

#include <string>
#include <vector>

namespace konus::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

/// Parses and runs one command line (program name excluded). Errors propagate
/// as exceptions.
int run(const std::vector<std::string>& args);

/// run() with exceptions mapped to exit codes and printed to stderr.
int run_guarded(const std::vector<std::string>& args);

}  // namespace konus::cli

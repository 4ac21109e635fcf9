#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace helmfuzz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // usage, config or .fis errors
inline constexpr int kExitRuntime = 3;  // simulation failures

/// Entry point shared by the `helmfuzz` executable and in-process tests.
/// `args[0]` is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helmfuzz::cli

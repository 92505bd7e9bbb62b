#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bachvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the command line `args` (args[0] is the program name) writing results
/// to `out` and diagnostics to `err`. Returns the process exit code:
/// 0 success, 2 usage or domain error, 3 internal numerical failure.
[[nodiscard]] int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bachvol::cli

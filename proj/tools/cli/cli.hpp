#pragma once

#include <ostream>
#include <span>
#include <string>

namespace tprophet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCertifyFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitCapacity = 3;

/// Runs the command line `args` (args[0] is the program name). Diagnostics
/// go to `err`, the summary table to `out`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace tprophet::cli

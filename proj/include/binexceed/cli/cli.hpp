#pragma once

#include <iosfwd>

namespace binexceed::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUndecided = 3;
inline constexpr int kExitIo = 4;

/// Runs the command line `argv` (argv[0] is the program name) and returns
/// the exit code. Subcommands: tail, check, verify, optimality, figure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace binexceed::cli

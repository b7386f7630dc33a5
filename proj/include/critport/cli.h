#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace critport {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitParse = 2,
  kExitInvalidPortrait = 3,
  kExitTraceFailure = 4,
  kExitMismatch = 5,
};

/// Runs the command line `critport <args...>` (args exclude the program
/// name) and returns the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace critport

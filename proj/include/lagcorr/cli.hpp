#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lagcorr::cli {

/// Stable across subcommands.
enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,
    kInputError = 2,
    kDegenerate = 3,
};

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lagcorr::cli

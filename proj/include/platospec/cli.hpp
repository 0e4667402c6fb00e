#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace platospec {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfigError = 2, kExitNotConverged = 3 };

/// Runs the command line `args` (without the program name). Results go to
/// --output or `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace platospec

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qlucas {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitConfigError = 2 };

/**
 * Runs one qlucas command. `args` excludes the program name. Reports go to
 * `out` (or the file named by --output); diagnostics go to `err`.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlucas

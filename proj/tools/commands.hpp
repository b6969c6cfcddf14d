#pragma once

#include <ostream>

namespace eup::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kValidationFailed = 3 };

/// Runs the tool with the given arguments (argv[0] is the program name).
/// Data goes to `out`; `EUP-ERR <code> <message>` lines go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eup::cli

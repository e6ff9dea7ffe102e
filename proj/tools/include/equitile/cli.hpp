#pragma once

#include <iosfwd>
#include <string>

namespace equitile {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInvalidInput = 1,
    kExitInternal = 2,
    kExitNegative = 3,  ///< does not tile, search failed, or patch rejected
};

/// Runs one command line. Results go to `out`, diagnostics to `err`; no
/// exception escapes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Top-level help followed by the help of every subcommand.
std::string cli_help();

}  // namespace equitile

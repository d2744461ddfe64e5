#pragma once

#include <iosfwd>

namespace nlgap::lab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitChecksFailed = 1,  ///< an experiment ran but some assertion failed
    kExitUsage = 2,         ///< unknown flag, missing argument
    kExitBadValue = 3,      ///< flag or config value out of its domain
    kExitUnknownCommand = 4,
    kExitIo = 5,
    kExitParse = 6,  ///< malformed input file
    kExitRuntime = 7,
};

/// Runs the tool: gen, spectrum, gamma, gamma-sup, embed, experiment <name>.
/// Results go to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nlgap::lab

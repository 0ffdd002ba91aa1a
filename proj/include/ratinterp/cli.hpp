#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ratinterp {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,    // selftest found a failing criterion
    kExitNoResult = 2,   // mu search exhausted or validation failed
    kExitBadInput = 3,   // usage error, malformed spec, missing bound
};

/// Entry point of the tool. args[0] is the program name, as in argv.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ratinterp

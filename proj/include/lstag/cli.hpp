#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lstag {

// Exit statuses shared by every command.
enum ExitStatus : int { kExitOk = 0, kExitInvalid = 1, kExitUsage = 2 };

// Runs the command line `args` (without the program name). Everything is
// written to `out` and `err`; `color` turns on ANSI markers for diagnostics.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

// LSTAG_COLOR=1 turns color on; unset or any other value leaves it off.
bool color_from_env();

}  // namespace lstag

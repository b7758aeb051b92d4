#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schelling::cli {

// Stable exit codes.
enum ExitCode : int { kOk = 0, kUsage = 1, kCycle = 2, kBudget = 3, kBoundViolation = 4 };

// Runs the command line `args` (without the program name). Primary output
// goes to `out` unless --out names a file; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schelling::cli

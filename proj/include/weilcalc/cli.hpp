#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weilcalc {

// Exit codes of the command-line interface.
enum ExitCode : int { kExitOk = 0, kExitMathFailure = 1, kExitInputError = 2 };

// Runs one command; args exclude the program name. The report goes to out and
// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weilcalc

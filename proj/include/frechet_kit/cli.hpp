#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fk {

enum ExitCode { kExitOk = 0, kExitError = 1, kExitNull = 2, kExitBudget = 3 };

// Runs one command line (args excludes the program name). JSON goes to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fk

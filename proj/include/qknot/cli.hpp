#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qknot::cli {

/// Runs the command-line front end on already-split arguments (no program
/// name). Output goes to `out`, diagnostics to `err`. Returns the process
/// exit code: 0 success, 1 verification failure, 2 usage error, 3 resource
/// cap exceeded.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qknot::cli

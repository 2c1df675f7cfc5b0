#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vertexlab {

/// Exit codes of the command-line front end.
enum ExitCode : int { exit_ok = 0, exit_violation = 1, exit_usage = 2 };

/// Runs one command (validate, cocycle, euler, mode, geomode, axioms, compare, independence).
/// args excludes the program name. JSON reports go to out, summaries and errors to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vertexlab

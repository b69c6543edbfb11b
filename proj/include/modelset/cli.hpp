#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modelset {

/// Runs the command line tool on `args` (without the program name). Output
/// that is not redirected with -o goes to `out`; errors are reported on `err`
/// as a single line "error: <kind>: <message>".
///
/// Exit codes: 0 success, 2 invalid input, 3 invariant violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modelset

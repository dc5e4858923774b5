#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace farc::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 2, kIoError = 3 };

/// Runs the `farc` command line. `args` excludes the program name. Output
/// and diagnostics go to the given streams instead of the process ones.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "start:stop:step" (inclusive of stop) or a comma-separated list.
std::vector<double> parse_axis(const std::string& spec);

}  // namespace farc::cli

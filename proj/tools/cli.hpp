#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace airate::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNumerical = 3,
  kNoConvergence = 4,
};

/// Runs the command line `args` (args[0] is the program name). Regular output
/// goes to `out` unless --out redirects it to a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Locale-independent shortest-round-trip-safe rendering (17 significant digits).
std::string format_number(double value);

}  // namespace airate::cli

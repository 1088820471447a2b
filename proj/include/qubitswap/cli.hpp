#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qubitswap::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kSuccess = 0,
    kRuntimeError = 1, ///< domain, solvency or I/O failure
    kUsageError = 2,
};

/// Runs the `qubitswap` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses `start:stop:count` into count evenly spaced values, both ends included.
std::vector<double> parse_grid(const std::string& spec);

} // namespace qubitswap::cli

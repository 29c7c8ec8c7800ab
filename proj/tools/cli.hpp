// cli.hpp
// Entry point of the qepi command-line tool, separated from main() so tests
// can drive it in-process.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qepi::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kCheckFailed = 2, kUsage = 64 };

/// argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// "%.12g", with ".0" appended to integral values ("1.0", "0.5").
std::string format_number(double v);

}  // namespace qepi::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equifuse::cli {

enum ExitCode : int { ok = 0, check_failed = 1, bad_invocation = 2 };

/// Runs one invocation (args exclude the program name). Output goes to out,
/// diagnostics to err; the return value is the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Rounds to 12 significant digits so JSON renderings are reproducible.
double round12(double x);

} // namespace equifuse::cli

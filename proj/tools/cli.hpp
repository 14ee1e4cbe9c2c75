#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace halfline::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kNumericFailure = 2, kVerificationFailure = 3 };

/// Runs one command line (args excludes the program name). Results go to
/// `out` unless the command was given --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halfline::cli

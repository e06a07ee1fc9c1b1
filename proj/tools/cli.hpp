#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlf::cli {

enum ExitCode { kOk = 0, kInternal = 1, kValidation = 2, kConvergence = 3, kLawMismatch = 4 };

// Runs one command line; `args` excludes the program name. Output goes to
// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlf::cli

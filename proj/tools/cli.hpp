#pragma once

#include <iosfwd>

namespace charvar::cli {

enum ExitCode { kPass = 0, kCheckFailed = 1, kUsage = 2, kNumeric = 3 };

// Parses argv, runs one subcommand and writes its JSON report to `out`
// (and to --out when given). Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace charvar::cli

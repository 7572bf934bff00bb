#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsearch::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInvariant = 2,
};

/// Runs one command line (args excludes the program name). Exit codes:
/// 0 success, 1 usage or input errors, 2 failed checks or invariant
/// violations.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qsearch::cli

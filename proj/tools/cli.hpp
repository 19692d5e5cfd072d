#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lot::cli {

/// Process exit statuses.
enum Status : int {
    ok = 0,
    negative = 1,      // a well-formed `entail`, `leq` or `interp check` query answered "no"
    input_error = 2,   // unreadable, malformed or inconsistent input
    cap_refused = 3,   // a model or concept cap was exceeded
};

/// Runs one command line (without the program name). Normal output goes to `out`,
/// diagnostics to `err`; `--out FILE` redirects the normal output to a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lot::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qv::cli {

/// Runs one command-line invocation; `args` excludes the program name.
/// Results go to `out`, diagnostics to `err`. Returns the process exit
/// code: 0 success, 2 usage error, 3 schema error, 4 numerical-integrity
/// error. Deterministic given the arguments; no environment variables are
/// consulted.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qv::cli

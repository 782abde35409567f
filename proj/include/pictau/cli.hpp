#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pictau::cli {

enum ExitCode : int { ok = 0, parse_error = 2, semantic_error = 3, internal_error = 4 };

/**
 * Runs one command line (args excludes the program name) against the given
 * streams and returns the process exit code. Reports go to `out`, diagnostics
 * to `err`.
 */
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}   // namespace pictau::cli

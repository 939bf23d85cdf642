#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coursegen::cli {

// Runs the command line (argv without the program name) against the given
// streams. Artifacts (DOT, reports) go to out, diagnostics and summaries to
// err. Returns the process exit code: 0 success, 1 content or build errors,
// 2 usage or config errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace coursegen::cli

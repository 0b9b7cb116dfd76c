#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slicebed {

/// Runs the command line; `args` excludes the program name.
/// Exit codes: 0 success, 1 blocked solve, 2 input error or bad usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slicebed

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qskew::cli {

// Runs one command line (without the program name); writes the JSON report
// or diagnostic to `out` and returns the exit code: 0 success, 2 invalid
// input, 3 failed mathematical precondition, 1 anything else.
int run(const std::vector<std::string>& args, std::ostream& out);

} // namespace qskew::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toric::cli {

// Runs one command line (without the program name). Exit codes: 0 success,
// 2 invalid input, 3 internal failure.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace toric::cli

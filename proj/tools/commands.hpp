#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ncgcp::cli {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 failed embedded acceptance check, 2 usage or input validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncgcp::cli

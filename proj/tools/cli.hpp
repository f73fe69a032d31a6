#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace edgemark::cli {

/// Runs the command line `args` (without the program name). Returns the
/// process exit status: 0 on success, 1 on a runtime failure, CLI11's code
/// on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgemark::cli

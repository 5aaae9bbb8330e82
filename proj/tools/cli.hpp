#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fliess::cli {

/// Runs one invocation (args exclude the program name). Returns the exit
/// code: 0 success or property holds, 1 property fails, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fliess::cli

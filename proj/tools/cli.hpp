#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpvoc::cli {

// Runs the lpvoc command line. `args` excludes the program name. Returns
// the process exit status: 0 on success, 2 on any error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpvoc::cli

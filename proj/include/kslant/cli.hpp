#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kslant::cli {

// Runs one command. args excludes the program name. Exit codes: 0 success,
// 1 a verification check failed, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kslant::cli

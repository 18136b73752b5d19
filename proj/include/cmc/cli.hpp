#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmc::cli {

/// Runs one command line. args[0] is the program name.
/// Exit codes: 0 success, 2 empty family, 1 usage, IO or numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace cmc::cli

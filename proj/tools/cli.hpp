#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphrep::cli {

// Exit statuses.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitReduction = 2;  // optimize --expect-optimal found a reduction

// Runs one command line (arguments without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphrep::cli

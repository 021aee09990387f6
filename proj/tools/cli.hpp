#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cutr::cli {

enum Exit : int { Ok = 0, BadInput = 1, Precondition = 2, Internal = 3 };

/// Runs one cutr command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cutr::cli

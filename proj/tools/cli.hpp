#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opetope::cli {

enum ExitCode { Ok = 0, Fails = 1, Usage = 2, Exhausted = 3 };

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opetope::cli

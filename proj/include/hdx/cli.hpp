#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdx::cli {

/// Exit codes: 0 pass, 1 input error, 2 condition or verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace hdx::cli

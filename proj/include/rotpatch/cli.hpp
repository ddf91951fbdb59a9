#pragma once

#include <string>
#include <vector>

namespace rotpatch::cli {

/// Entry point shared by the binary and the tests. argv excludes the program
/// name. Exit codes: 0 success, 1 numerical failure (structured error JSON on
/// stdout), 2 usage error.
int run(const std::vector<std::string>& argv);

}  // namespace rotpatch::cli

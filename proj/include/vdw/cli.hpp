#pragma once

// Command-line front end.  run_cli takes the arguments after the program
// name and returns the process exit code: 0 success, 1 a verification or
// cross-check failed, 2 usage or precondition error.

#include <iosfwd>
#include <string>
#include <vector>

namespace vdw {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vdw

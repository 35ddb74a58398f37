#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tfib::cli {

// Exit codes: 0 pass, 1 failed validation or invariant, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tfib::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aivalue::cli {

// Exit codes: 0 ok, 1 check or consistency failure, 2 usage, 3 bad data.
constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

/// Runs one command. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aivalue::cli

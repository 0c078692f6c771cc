#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gausscrit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitAssertFailed = 4;

/// Entry point of the command-line tool; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gausscrit::cli

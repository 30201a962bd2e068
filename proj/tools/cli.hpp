#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cichon::cli {

inline constexpr int kExitOk = 0;
/// Violations, unpinned tables, inconsistent bounds, failed replays.
inline constexpr int kExitFailed = 1;
/// Anything wrong with the input.
inline constexpr int kExitInput = 2;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);
/// Same, without argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cichon::cli

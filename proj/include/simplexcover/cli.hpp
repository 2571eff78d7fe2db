#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace simplexcover {

/// Exit codes: 0 success, 1 computed but the asserted claim is false,
/// 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitClaimFalse = 1;
inline constexpr int kExitUsage = 2;

/// Dispatches `args` (without the program name) to a subcommand:
/// tile, cover, density-table, search-f, verify-bounds, theta-bounds.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simplexcover

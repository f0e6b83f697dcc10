#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ordiff/cli/parse.hpp"
#include "ordiff/cli/report.hpp"

namespace ordiff::cli {

/// Exit codes: 0 pass, 1 any failure, 2 usage or parse error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Multipliers at xbar plus a Fréchet check of them.
json cmd_derive(const RunConfig& cfg, const Vector& xbar);

/// Entry point shared by the executable and the tests; `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordiff::cli

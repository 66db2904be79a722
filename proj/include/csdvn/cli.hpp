#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace csdvn {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kOutputDirEnv = "CSDVN_OUTPUT_DIR";

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2 };

/// Runs one subcommand. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csdvn

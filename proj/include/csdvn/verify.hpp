#pragma once

// Analytic-versus-oracle checks behind the `verify` subcommand.

#include <string>
#include <vector>

namespace csdvn {

struct VerifyCheck {
  std::string suite;
  std::string name;
  std::string params;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Replaces the H-ISL count formula with an off-by-one variant so the
  /// failure path can be exercised.
  bool inject_count_fault = false;
};

const std::vector<std::string>& verify_suites();  // without "all"

/// Throws ConfigError for an unknown suite name.
std::vector<VerifyCheck> run_verify(const std::string& suite, const VerifyOptions& options = {});

}  // namespace csdvn

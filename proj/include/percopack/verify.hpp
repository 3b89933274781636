#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace percopack {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// Property battery over every module. Each check is deterministic in the
/// seed and independent of the worker count.
std::vector<VerifyCheck> run_verify(const VerifyOptions& options);

/// Fixed-width pass/fail table.
std::string format_verify_table(const std::vector<VerifyCheck>& checks);

}  // namespace percopack

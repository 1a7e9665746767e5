#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace permuton {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast end-to-end checks (well under a minute on one core). Prints one line
/// per check to `log` when it is non-null.
std::vector<CheckResult> run_selftest(std::uint64_t seed, std::ostream* log);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace permuton

// Fast invariant checks run by the `selftest` command.

#pragma once

#include <string>
#include <vector>

namespace su2ent {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs every check; exceptions inside a check count as failures.
std::vector<SelftestCheck> run_selftest();

}  // namespace su2ent

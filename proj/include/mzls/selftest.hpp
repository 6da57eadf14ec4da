#pragma once

#include <string>
#include <vector>

namespace mzls {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast in-process invariant checks across all modules.
std::vector<SelfTestResult> run_selftest();

}  // namespace mzls

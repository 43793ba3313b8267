// Acceptance gate: runs the full verification suite and prints one
// [PASS]/[FAIL] line per criterion. Exits nonzero if any criterion fails.
#include <cstdio>
#include <filesystem>
#include <string>

#include "lw/experiments.hpp"

int main() {
  const std::filesystem::path golden =
      std::filesystem::path(__FILE__).parent_path() / "golden" /
      "min_valid_t.json";
  const std::vector<lw::CriterionResult> results =
      lw::verify_suite(lw::VerifyLevel::Full, golden.string());
  for (const lw::CriterionResult& r : results) {
    std::printf("[%s] %s %s (%.2fs): %s\n", r.passed ? "PASS" : "FAIL",
                r.id.c_str(), r.name.c_str(), r.seconds, r.detail.c_str());
  }
  return lw::all_passed(results) ? 0 : 1;
}

// Acceptance suite: every contract check, one pass/fail line each.
#include <cstdio>
#include <thread>

#include "vcglearn/verify.hpp"

int main() {
  unsigned hw = std::thread::hardware_concurrency();
  int parallelism = static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
  vcglearn::VerifyContext ctx(parallelism);

  bool all_passed = true;
  int index = 0;
  for (const vcglearn::CheckResult& check : vcglearn::run_all_checks(ctx)) {
    all_passed = all_passed && check.passed;
    std::printf("[%s] %02d %s: %s (%.1fs)\n", check.passed ? "PASS" : "FAIL", ++index,
                check.name.c_str(), check.detail.c_str(), check.seconds);
    std::fflush(stdout);
  }
  std::printf("%s\n", all_passed ? "acceptance suite passed" : "acceptance suite FAILED");
  return all_passed ? 0 : 1;
}

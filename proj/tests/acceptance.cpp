// Acceptance gate: one test case per criterion, each printing a single
// "[PASS]/[FAIL] criterion N: ..." line.

#include <doctest.h>

#include <iostream>
#include <string>

#include "qclone/verify.hpp"

namespace {

void criterion(int n) {
  qclone::VerifyOptions options;
  options.criterion = n;
  const qclone::VerificationResult result = qclone::run_verification(options);
  const bool ok = !result.checks.empty() && result.all_passed();
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << qclone::criterion_title(n)
            << " (" << result.passed() << "/" << result.checks.size() << " checks)" << std::endl;
  REQUIRE_FALSE(result.checks.empty());
  for (const auto& c : result.checks) {
    INFO(c.id << ": " << c.reference << " residual=" << c.residual << " tolerance=" << c.tolerance
              << " " << c.detail);
    CHECK(c.passed);
  }
}

}  // namespace

TEST_CASE("criterion 1") { criterion(1); }
TEST_CASE("criterion 2") { criterion(2); }
TEST_CASE("criterion 3") { criterion(3); }
TEST_CASE("criterion 4") { criterion(4); }
TEST_CASE("criterion 5") { criterion(5); }
TEST_CASE("criterion 6") { criterion(6); }
TEST_CASE("criterion 7") { criterion(7); }
TEST_CASE("criterion 8") { criterion(8); }
TEST_CASE("criterion 9") { criterion(9); }
TEST_CASE("criterion 10") { criterion(10); }
TEST_CASE("criterion 11") { criterion(11); }
TEST_CASE("criterion 12") { criterion(12); }
TEST_CASE("criterion 13") { criterion(13); }

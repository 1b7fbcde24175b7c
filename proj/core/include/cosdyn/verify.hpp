#pragma once

// Reproduction checks for the closed-form constants and the property
// suites. Every check is a report row; nothing throws on failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace cosdyn {

struct CheckResult {
  std::string id;
  double expected = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  // Figure-1 scan size; 800 reproduces the full smoke test.
  int scan_px = 800;
  int threads = 8;
  double scan_time_limit = 120.0;
  unsigned seed = 20240611;
};

std::vector<CheckResult> verify_suite(const VerifyOptions& opts = {});

// check_id,expected,measured,tolerance,pass
void write_report_csv(std::ostream& out, const std::vector<CheckResult>& report);
bool all_passed(const std::vector<CheckResult>& report);

} // namespace cosdyn

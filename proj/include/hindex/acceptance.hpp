#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hindex {

struct AcceptanceOptions {
  /// Fewer and smaller random instances (n <= 3).
  bool quick = false;
  std::uint64_t seed = 20240917;
};

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  /// Neither pass nor fail: a randomized search found nothing in budget.
  bool inconclusive = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the acceptance checks AC1..AC11 in order. `on_result`, when set,
/// is called as each check finishes.
std::vector<CheckResult> run_acceptance(const AcceptanceOptions& options,
                                        const std::function<void(const CheckResult&)>& on_result = {});

/// "PASS", "FAIL" or "INCONCLUSIVE".
const char* status_label(const CheckResult& r);

}  // namespace hindex

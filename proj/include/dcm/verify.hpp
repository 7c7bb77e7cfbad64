#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dcm {

enum class CheckStatus { kPass, kFail, kSkip };

std::string_view to_string(CheckStatus s);

struct CheckResult {
  int id = 0;
  std::string name;
  CheckStatus status = CheckStatus::kSkip;
  std::string detail;
};

struct SuiteOptions {
  int k_min = 1;
  int k_max = 12;
  bool quick = false;   // no graph builds above quick_cap
  int quick_cap = 8;
  unsigned threads = 0;
  std::uint64_t memory_cap_mb = 0;
  std::function<void(const std::string&)> progress;
};

// Runs the thirteen acceptance checks restricted to [k_min, k_max]. A check
// with nothing to do in that range is reported as skipped. Resource
// problems propagate as ResourceError instead of turning into failures.
std::vector<CheckResult> run_suite(const SuiteOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

std::string suite_json(const SuiteOptions& options, const std::vector<CheckResult>& results);

}  // namespace dcm

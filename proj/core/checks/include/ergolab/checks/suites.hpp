#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ergolab::checks {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  /// Counts, the first violation found, or the exception that stopped the run.
  std::string detail;
  double seconds = 0;
  /// Wall-clock budget; exceeding it fails the suite.
  double limit_seconds = 0;
};

/// lipschitz, ergodicity, tm1, null-point, periodic, tm2, rokhlin, oracle,
/// totally-ergodic, in this order.
const std::vector<std::string>& suite_names();

/// True for the names run_checks accepts.
bool is_suite_name(std::string_view name);

/// Accepts a suite name, the same name with a "-suite" suffix, or "all".
/// Throws UsageError for anything else.
std::vector<CheckOutcome> run_checks(std::string_view name, std::uint64_t seed = 0);

CheckOutcome run_suite(std::string_view name, std::uint64_t seed = 0);

}  // namespace ergolab::checks

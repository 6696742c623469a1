#pragma once

#include <cstddef>
#include <string>
#include <vector>

// The acceptance criteria as self-contained checks, shared by the gtest
// suites and the acceptance binary.
namespace bpkb::testing {

struct Check {
  bool pass = true;
  std::string detail;

  // Records a failed condition; returns `ok`.
  bool expect(bool ok, const std::string& what);
};

// Tolerances.
inline constexpr double kHandleOrderSeconds = 5.0;
inline constexpr long kHandleOrderMaxRssKb = 512L * 1024;
inline constexpr double kScalabilitySpaceSeconds = 10.0;
inline constexpr double kScalabilityVerifySeconds = 5.0;

// Regression value: states of the Handle Order state space.
inline constexpr std::size_t kHandleOrderStates = 132;

// The closed-order rule as a noncompliance pattern over Handle Order.
extern const char* const kClosedOrderPattern;

Check handle_order_compliance();     // 1
Check derivation_example();          // 2
Check retrieval_examples();          // 3
Check oracle_equivalence();          // 4
Check invariant_suites();            // 5
Check scalability();                 // 6
Check nf_validation();               // 7

}  // namespace bpkb::testing

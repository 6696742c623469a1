#include <gtest/gtest.h>

#include "support/suites.h"

namespace bpkb::testing {
namespace {

TEST(OracleEquivalence, SuccessorsMatchLiteralInterpreter) {
  auto r = successor_equivalence(1001);
  EXPECT_EQ(r.cases, 200u);
  EXPECT_GT(r.comparisons, 2000u);
  EXPECT_EQ(r.discrepancies, 0u) << r.first_discrepancy;
}

TEST(OracleEquivalence, ModelCheckerMatchesPathEnumeration) {
  auto r = ctl_equivalence(2002);
  EXPECT_EQ(r.cases, 200u);
  EXPECT_EQ(r.discrepancies, 0u) << r.first_discrepancy;
}

TEST(OracleEquivalence, EntailmentMatchesNaiveFixpoint) {
  auto r = entailment_equivalence(3003);
  EXPECT_EQ(r.cases, 200u);
  EXPECT_EQ(r.discrepancies, 0u) << r.first_discrepancy;
}

// Other seeds, so a fixed seed cannot hide a class of models.
TEST(OracleEquivalence, FurtherSeeds) {
  for (unsigned seed : {11u, 12u, 13u}) {
    auto s = successor_equivalence(seed, 100);
    EXPECT_EQ(s.discrepancies, 0u) << seed << "\n" << s.first_discrepancy;
    auto c = ctl_equivalence(seed, 50, 8, 20, 4);
    EXPECT_EQ(c.discrepancies, 0u) << seed << "\n" << c.first_discrepancy;
    auto e = entailment_equivalence(seed, 50);
    EXPECT_EQ(e.discrepancies, 0u) << seed << "\n" << e.first_discrepancy;
  }
}

}  // namespace
}  // namespace bpkb::testing

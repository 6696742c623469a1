#include <gtest/gtest.h>

#include "bpkb/services.h"
#include "support/criteria.h"
#include "support/fixtures.h"
#include "support/suites.h"

namespace bpkb::testing {
namespace {

TEST(HandleOrder, ClosedOrderRuleViolated) {
  auto c = handle_order_compliance();
  EXPECT_TRUE(c.pass) << c.detail;
}

TEST(HandleOrder, StateSpaceRegression) {
  auto kb = handle_order();
  Analysis an("ho", kb.context());
  EXPECT_EQ(an.graph().size(), kHandleOrderStates);
  EXPECT_TRUE(option_to_complete(an).holds);
  EXPECT_FALSE(inconsistency(an).holds);
}

TEST(HandleOrder, DerivationExample) {
  auto c = derivation_example();
  EXPECT_TRUE(c.pass) << c.detail;
}

TEST(HandleOrder, RetrievalExamples) {
  auto c = retrieval_examples();
  EXPECT_TRUE(c.pass) << c.detail;
}

TEST(HandleOrder, InvariantSuites) {
  auto c = invariant_suites();
  EXPECT_TRUE(c.pass) << c.detail;
}

TEST(NfValidation, FlounderingRejectedOthersAccepted) {
  auto c = nf_validation();
  EXPECT_TRUE(c.pass) << c.detail;
}

}  // namespace
}  // namespace bpkb::testing

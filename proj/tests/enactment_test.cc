#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "bpkb/enactment.h"
#include "bpkb/error.h"
#include "bpkb/knowledge_base.h"
#include "bpkb/services.h"
#include "support/fixtures.h"

namespace bpkb {
namespace {

const std::string kType(vocab::kType);

Fluent type(const std::string& x, const std::string& c) { return Fluent::tf(x, kType, c); }

KnowledgeBase reference_kb(const std::string& bps, const std::string& ann = "") {
  return KnowledgeBase::from_text(bps, testing::read_data("handle_order/reference.dl"), ann);
}

FluentExpr atom(const Fluent& f) { return FluentExpr::of(pattern_of(f)); }

TEST(InitialState, Examples) {
  auto kb = KnowledgeBase::from_text(testing::kMinimalProcess);
  EXPECT_EQ(initial_state("p", kb.context()), State({Fluent::cf(kStartToken, "s", "p")}));
  auto ho = testing::handle_order();
  EXPECT_EQ(initial_state("ho", ho.context()), State({Fluent::cf(kStartToken, "s", "ho")}));
  EXPECT_THROW(initial_state("ordering", ho.context()), InputError);
  EXPECT_THROW(initial_state("nope", ho.context()), InputError);
}

TEST(DerivedClosure, Subsumption) {
  auto kb = reference_kb(testing::kMinimalProcess);
  auto c = derived_closure(State({type("o", "bro:CancelledPO")}), kb.context());
  EXPECT_TRUE(c->contains({"o", kType, "bro:ClosedPO"}));
  EXPECT_TRUE(c->contains({"o", kType, "bro:Purchase_Order"}));
  EXPECT_FALSE(c->inconsistent);
}

TEST(DerivedClosure, StateAfterPartsAuction) {
  auto kb = reference_kb(testing::kMinimalProcess);
  State s({type("o", "bro:Purchase_Order"), Fluent::tf("o", "bro:related", "pl"),
           type("pl", "bro:UnavailablePL")});
  auto c = derived_closure(s, kb.context());
  EXPECT_TRUE(c->contains({"o", kType, "bro:CancelledPO"}));
  EXPECT_TRUE(c->contains({"o", kType, "bro:ClosedPO"}));
  EXPECT_TRUE(holds(type("o", "bro:ClosedPO"), s, kb.context()));
}

TEST(DerivedClosure, DisjointnessGivesFalse) {
  auto kb = KnowledgeBase::from_text(testing::kMinimalProcess, "A disjointWith B\n");
  auto c = derived_closure(State({type("x", "A"), type("x", "B")}), kb.context());
  EXPECT_TRUE(c->inconsistent);
  EXPECT_FALSE(derived_closure(State({type("x", "A"), type("y", "B")}), kb.context())->inconsistent);
}

TEST(DerivedClosure, PropertyRules) {
  auto kb = KnowledgeBase::from_text(
      testing::kMinimalProcess,
      "p subPropertyOf q\nq domain D\nq range R\nq inverseOf qi\ntransitive t\n");
  State s({Fluent::tf("a", "p", "b"), Fluent::tf("x", "t", "y"), Fluent::tf("y", "t", "z")});
  auto c = derived_closure(s, kb.context());
  EXPECT_TRUE(c->contains({"a", "q", "b"}));
  EXPECT_TRUE(c->contains({"a", kType, "D"}));
  EXPECT_TRUE(c->contains({"b", kType, "R"}));
  EXPECT_TRUE(c->contains({"b", "qi", "a"}));
  EXPECT_TRUE(c->contains({"x", "t", "z"}));
}

// Random tf states over the reference vocabulary.
State random_tf_state(std::mt19937& rng, std::size_t max_size) {
  static const std::vector<std::string> kInd = {"o", "pl", "i", "c"};
  static const std::vector<std::string> kClasses = {
      "bro:Purchase_Order", "bro:ApprovedPO", "bro:CancelledPO", "bro:UnavailablePL",
      "bro:AvailablePL",    "bro:Invoice",    "bro:Employee",    "bro:Order"};
  static const std::vector<std::string> kProps = {"bro:related", "bro:member", "bro:payment"};
  std::vector<Fluent> out;
  std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_size)(rng);
  auto pick = [&](const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (std::bernoulli_distribution(0.6)(rng)) {
      out.push_back(type(pick(kInd), pick(kClasses)));
    } else {
      out.push_back(Fluent::tf(pick(kInd), pick(kProps), pick(kInd)));
    }
  }
  return State(out);
}

State as_state(const Derivation& d) {
  std::vector<Fluent> fs;
  for (const auto& f : d.facts) fs.push_back(Fluent::tf(f[0], f[1], f[2]));
  return State(fs);
}

TEST(DerivedClosure, IdempotentMonotoneExtensive) {
  auto kb = reference_kb(testing::kMinimalProcess);
  std::mt19937 rng(5);
  for (int round = 0; round < 300; ++round) {
    State a = random_tf_state(rng, 6);
    State extra = random_tf_state(rng, 3);
    std::vector<Fluent> both = a.fluents();
    both.insert(both.end(), extra.fluents().begin(), extra.fluents().end());
    State b(both);
    auto ca = derived_closure(a, kb.context());
    auto cb = derived_closure(b, kb.context());
    for (const auto& f : a.tf_triples()) ASSERT_TRUE(ca->contains(f));
    ASSERT_TRUE(std::includes(cb->facts.begin(), cb->facts.end(), ca->facts.begin(), ca->facts.end()));
    if (ca->inconsistent) {
      ASSERT_TRUE(cb->inconsistent);
    }
    auto again = derived_closure(as_state(*ca), kb.context());
    ASSERT_EQ(again->facts, ca->facts);
  }
}

TEST(Holds, Examples) {
  auto kb = reference_kb(testing::kMinimalProcess);
  const auto& ctx = kb.context();
  EXPECT_TRUE(holds(FluentExpr::truth(), State(), ctx));
  EXPECT_TRUE(holds(FluentExpr::negation(atom(Fluent::en("a", "p"))), State(), ctx));
  EXPECT_TRUE(holds(type("o", "bro:ClosedPO"), State({type("o", "bro:CancelledPO")}), ctx));
  EXPECT_TRUE(holds(parse_fluent_expr("tf(o, rdf:type, bro:ClosedPO)"), State({type("o", "bro:CancelledPO")}), ctx));
}

TEST(Holds, NegationIsComplement) {
  auto kb = reference_kb(testing::kMinimalProcess);
  std::mt19937 rng(9);
  std::vector<Fluent> pool = {Fluent::en("a", "p"), Fluent::cf("s", "e", "p"), Fluent::wrtn("a", "it", "p"),
                              type("o", "bro:ClosedPO"), type("o", "bro:Order"),
                              Fluent::tf("o", "bro:related", "i")};
  for (int round = 0; round < 200; ++round) {
    State tf = random_tf_state(rng, 5);
    std::vector<Fluent> fs = tf.fluents();
    for (const auto& f : pool) {
      if (f.kind != FluentKind::kTf && std::bernoulli_distribution(0.5)(rng)) fs.push_back(f);
    }
    State s(fs);
    for (const auto& f : pool) {
      ASSERT_EQ(holds(FluentExpr::negation(atom(f)), s, kb.context()), !holds(atom(f), s, kb.context()));
    }
  }
}

TEST(Holds, UnboundVariableUnderNotIsNegatedExistential) {
  auto kb = reference_kb(testing::kMinimalProcess);
  auto e = parse_fluent_expr("not(tf(X, rdf:type, bro:ApprovedPO))");
  EXPECT_TRUE(holds(e, State(), kb.context()));
  EXPECT_FALSE(holds(e, State({type("o", "bro:ApprovedPO")}), kb.context()));
}

TEST(Match, BindsVariable) {
  auto kb = reference_kb(testing::kMinimalProcess);
  auto r = match(parse_fluent_expr("tf(O, rdf:type, bro:Purchase_Order)"),
                 State({type("o", "bro:ApprovedPO")}), kb.context());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], (Substitution{{"O", "o"}}));
}

TEST(Match, UnsafeNegation) {
  auto kb = reference_kb(testing::kMinimalProcess);
  EXPECT_THROW(match(parse_fluent_expr("not(tf(O, rdf:type, bro:Order))"), State(), kb.context()),
               UnsafeNegation);
  EXPECT_THROW(match(parse_fluent_expr("and(not(tf(O, rdf:type, bro:Order)), tf(O, rdf:type, bro:X))"),
                     State(), kb.context()),
               UnsafeNegation);
}

TEST(Match, AgreesWithEnumeration) {
  auto kb = reference_kb(testing::kMinimalProcess);
  const auto& ctx = kb.context();
  std::mt19937 rng(13);
  const std::vector<std::pair<std::string, std::string>> kPairs = {
      {"bro:Purchase_Order", "bro:ClosedPO"}, {"bro:Order", "bro:ApprovedPO"},
      {"bro:Part_List", "bro:AvailablePL"}, {"bro:ClosedPO", "bro:CancelledPO"}};
  for (int round = 0; round < 200; ++round) {
    State s = random_tf_state(rng, 6);
    for (const auto& [c1, c2] : kPairs) {
      auto pattern = parse_fluent_expr("and(tf(O, rdf:type, " + c1 + "), not(tf(O, rdf:type, " + c2 + ")))");
      std::vector<Substitution> expected;
      std::vector<std::string> universe = ctx.constants();
      for (const auto& f : s.fluents()) {
        universe.push_back(f.args[0]);
        universe.push_back(f.args[2]);
      }
      std::sort(universe.begin(), universe.end());
      universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
      for (const auto& o : universe) {
        if (holds(bpkb::apply(Substitution{{"O", o}}, pattern), s, ctx)) expected.push_back(Substitution{{"O", o}});
      }
      ASSERT_EQ(match(pattern, s, ctx), expected) << to_string(s) << " " << c1 << " " << c2;
    }
  }
}

std::vector<State> targets(const std::vector<Transition>& ts) {
  std::vector<State> out;
  for (const auto& t : ts) out.push_back(t.target);
  return out;
}

TEST(Successors, StartEventOfHandleOrder) {
  auto kb = testing::handle_order();
  auto ts = successors(initial_state("ho", kb.context()), kb.context());
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].action, Action::complete("s"));
  EXPECT_EQ(ts[0].target, State({Fluent::cf("s", "ordering", "ho")}));
}

TEST(Successors, ParallelBranch) {
  auto kb = KnowledgeBase::from_text(testing::parallel_diamond(2, 1));
  auto ts = successors(State({Fluent::cf("s", "pb", "p")}), kb.context());
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].action, Action::complete("pb"));
  EXPECT_EQ(ts[0].target, State({Fluent::cf("pb", "t0_0", "p"), Fluent::cf("pb", "t1_0", "p")}));
}

TEST(Successors, UnguardedInclusiveBranchChoosesNonEmptySubsets) {
  auto kb = KnowledgeBase::from_text(testing::kInclusiveProcess);
  auto ts = successors(State({Fluent::cf("s", "ib", "p")}), kb.context());
  auto got = targets(ts);
  std::vector<State> expected = {State({Fluent::cf("ib", "a", "p")}), State({Fluent::cf("ib", "b", "p")}),
                                 State({Fluent::cf("ib", "a", "p"), Fluent::cf("ib", "b", "p")})};
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(got, expected);
}

TEST(Successors, GuardedInclusiveBranchTakesSatisfiedGuards) {
  auto kb = KnowledgeBase::from_text(testing::kInclusiveProcess, "",
                                     "c_seq(tf(x, rdf:type, k), ib, a, p).\n"
                                     "c_seq(not(tf(x, rdf:type, k)), ib, b, p).\n");
  auto none = targets(successors(State({Fluent::cf("s", "ib", "p")}), kb.context()));
  EXPECT_EQ(none, std::vector<State>{State({Fluent::cf("ib", "b", "p")})});
  auto typed = targets(successors(State({Fluent::cf("s", "ib", "p"), type("x", "k")}), kb.context()));
  EXPECT_EQ(typed, std::vector<State>{State({Fluent::cf("ib", "a", "p"), type("x", "k")})});
}

TEST(Successors, GuardedExclusiveBranchUnaffectedByUnrelatedAxioms) {
  auto base = testing::handle_order();
  auto extended = KnowledgeBase::from_text(
      testing::read_data("handle_order/handle_order.bps"),
      testing::read_data("handle_order/reference.dl") + "Zork subClassOf Blarg\nBlarg disjointWith Quux\n",
      testing::read_data("handle_order/handle_order.ann"));
  auto g1 = state_space("ho", base.context());
  auto g2 = state_space("ho", extended.context());
  EXPECT_EQ(g1.to_text(), g2.to_text());
}

TEST(StateSpace, MinimalProcess) {
  auto kb = KnowledgeBase::from_text(testing::kMinimalProcess);
  auto g = state_space("p", kb.context());
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g.states[0], State({Fluent::cf(kStartToken, "s", "p")}));
  EXPECT_EQ(g.states[1], State({Fluent::cf("s", "e", "p")}));
  EXPECT_EQ(g.states[2], State({Fluent::cf("e", kEndToken, "p")}));
  EXPECT_EQ(g.sinks(), std::vector<std::size_t>{2});
}

TEST(StateSpace, OneTaskProcess) {
  auto kb = KnowledgeBase::from_text(testing::kOneTaskProcess);
  auto g = state_space("p", kb.context());
  ASSERT_EQ(g.size(), 5u);
  std::vector<Action> actions;
  for (const auto& e : g.edges) actions.push_back(e.action);
  EXPECT_EQ(actions, (std::vector<Action>{Action::complete("s"), Action::begin("t"), Action::complete("t"),
                                          Action::complete("e")}));
}

TEST(StateSpace, ParallelDiamondCounts) {
  std::size_t pow3 = 1;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto kb = KnowledgeBase::from_text(testing::parallel_diamond(n, 1));
    auto g = state_space("p", kb.context());
    EXPECT_EQ(g.size(), pow3 * 3 + 4) << n;
    EXPECT_EQ(g.edges.size(), 2 * n * pow3 + 4) << n;
    pow3 *= 3;
  }
}

TEST(StateSpace, TwoByTwoDiamondInterleavings) {
  auto kb = KnowledgeBase::from_text(testing::parallel_diamond(2, 2));
  auto g = state_space("p", kb.context());
  EXPECT_EQ(g.size(), 29u);
  auto traces = generate_traces("p", kb.context(), 12);
  EXPECT_EQ(traces.size(), 70u);
  for (const auto& t : traces) EXPECT_EQ(t.size(), 12u);
}

TEST(StateSpace, DeterministicAndSafe) {
  auto kb = testing::handle_order();
  auto g1 = state_space("ho", kb.context());
  auto g2 = state_space("ho", kb.context());
  EXPECT_EQ(g1.to_text(), g2.to_text());
  for (const auto& s : g1.states) {
    EXPECT_TRUE(std::adjacent_find(s.fluents().begin(), s.fluents().end()) == s.fluents().end());
  }
  for (const auto& e : g1.edges) {
    auto ts = successors(g1.states[e.from], kb.context());
    EXPECT_TRUE(std::find(ts.begin(), ts.end(), Transition{e.action, g1.states[e.to]}) != ts.end());
  }
}

TEST(StateSpace, Budget) {
  auto kb = testing::handle_order();
  EXPECT_THROW(state_space("ho", kb.context(), 5), BudgetExceeded);
}

bool has_edge(const KripkeGraph& g, std::size_t from, const Action& a) {
  for (auto i : g.out_edges(from)) {
    if (g.edges[i].action == a) return true;
  }
  return false;
}

TEST(InclusiveMerge, FiresWithoutUntakenArmAndWaitsForActiveOne) {
  auto kb = KnowledgeBase::from_text(testing::kInclusiveProcess);
  auto g = state_space("p", kb.context());
  const auto arrived = Fluent::cf("a", "im", "p");
  int fired = 0, waited = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& s = g.states[i];
    if (!s.contains(arrived)) continue;
    bool other_active = s.contains(Fluent::cf("ib", "b", "p")) || s.contains(Fluent::en("b", "p"));
    bool fires = has_edge(g, i, Action::complete("im"));
    if (s.size() == 1) {
      EXPECT_TRUE(fires) << to_string(s);
      ++fired;
    }
    if (other_active) {
      EXPECT_FALSE(fires) << to_string(s);
      ++waited;
    }
  }
  EXPECT_GT(fired, 0);
  EXPECT_GT(waited, 0);
  // Both tokens present: fires once, consuming both.
  State both({Fluent::cf("a", "im", "p"), Fluent::cf("b", "im", "p")});
  auto ts = successors(both, kb.context());
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].target, State({Fluent::cf("im", "e", "p")}));
}

TEST(InclusiveMerge, HandleOrderFragment) {
  auto kb = testing::handle_order();
  auto g = state_space("ho", kb.context());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& s = g.states[i];
    bool auction_waiting = s.contains(Fluent::cf("g3", "parts_auction", "ho")) ||
                           s.contains(Fluent::en("parts_auction", "ho"));
    if (s.contains(Fluent::cf("allocate_inventory", "g4", "ho")) && auction_waiting) {
      EXPECT_FALSE(has_edge(g, i, Action::complete("g4"))) << to_string(s);
    }
  }
}

TEST(Consistency, InconsistentStateReported) {
  auto kb = KnowledgeBase::from_text(testing::kOneTaskProcess, "ka disjointWith kc\n",
                                     "eff(t, true, [], [tf(x, rdf:type, ka), tf(x, rdf:type, kc)], p).\n");
  auto g = state_space("p", kb.context());
  auto r = consistency_check(g, kb.context());
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].kind, ConsistencyViolation::Kind::kInconsistentState);
}

TEST(Consistency, HandleOrderIsClean) {
  auto kb = testing::handle_order();
  auto g = state_space("ho", kb.context());
  auto r = consistency_check(g, kb.context());
  for (const auto& v : r.violations) ADD_FAILURE() << v.message;
}

const char* const kTwoTasks =
    "bp(p, s, e).\nstart_event(s).\nend_event(e).\ntask(a).\ntask(b).\n"
    "seq(s, a, p).\nseq(a, b, p).\nseq(b, e, p).\n";

TEST(Consistency, NegativeEffectStillDerivable) {
  auto kb = reference_kb(kTwoTasks,
                         "eff(a, true, [], [tf(o, rdf:type, bro:ApprovedPO), tf(o, bro:related, i), "
                         "tf(i, rdf:type, bro:Invoice)], p).\n"
                         "eff(b, true, [tf(o, rdf:type, bro:FulfilledPO)], [], p).\n");
  auto g = state_space("p", kb.context());
  auto r = consistency_check(g, kb.context());
  ASSERT_EQ(r.violations.size(), 1u);
  const auto& v = r.violations[0];
  EXPECT_EQ(v.kind, ConsistencyViolation::Kind::kNegativeEffectHolds);
  ASSERT_TRUE(v.edge.has_value());
  EXPECT_EQ(g.edges[*v.edge].action, Action::complete("b"));
  EXPECT_EQ(v.fluent, type("o", "bro:FulfilledPO"));
}

TEST(Consistency, RemovedNegativeEffectIsFine) {
  auto kb = reference_kb(kTwoTasks,
                         "eff(a, true, [], [tf(o, rdf:type, bro:ApprovedPO)], p).\n"
                         "eff(b, true, [tf(o, rdf:type, bro:ApprovedPO)], [tf(o, rdf:type, bro:CancelledPO)], p).\n");
  auto g = state_space("p", kb.context());
  EXPECT_TRUE(consistency_check(g, kb.context()).ok());
}

}  // namespace
}  // namespace bpkb

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bpkb/ctl.h"
#include "bpkb/enactment.h"

namespace bpkb {

// A path in the state space: actions[i] leads from states[i] to states[i+1].
struct Witness {
  std::vector<std::size_t> states;
  std::vector<Action> actions;
};

// Shortest path from `from` to any state with target[i] set, by BFS over
// out-edges in order.
std::optional<Witness> shortest_path(const KripkeGraph& graph, std::size_t from,
                                     const std::vector<bool>& target);

struct Verdict {
  std::string property;
  bool holds = false;
  std::optional<Witness> witness;
  std::vector<Substitution> bindings;
};

// State space plus model checker for one top-level process.
class Analysis {
 public:
  Analysis(ElementId process, const EnactmentContext& ctx, std::size_t budget = kDefaultStateBudget);

  const ElementId& process() const { return process_; }
  const EnactmentContext& context() const { return ctx_; }
  const KripkeGraph& graph() const { return graph_; }
  ModelChecker& checker() { return *checker_; }

 private:
  ElementId process_;
  const EnactmentContext& ctx_;
  KripkeGraph graph_;
  std::unique_ptr<ModelChecker> checker_;
};

// AG(EF(final(p))) at the initial state. On failure the witness leads to a
// state from which no final state is reachable.
Verdict option_to_complete(Analysis& a);

// EF(false) at the initial state; the witness leads to an inconsistent
// state.
Verdict inconsistency(Analysis& a);

// Activities A with EF(and(cf(X, A, Q), not(EX(en(A, Q))))) at the initial
// state, where Q is the process that owns A. Sorted.
std::vector<ElementId> non_executable_activities(Analysis& a);

// Evaluates a noncompliance pattern at the initial state, wrapped in EF
// unless it already is one. The rule is complied with (holds) iff the
// pattern has no satisfying binding; otherwise the bindings are returned
// with a witness for the first.
Verdict compliance(Analysis& a, const Formula& noncompliance);

// Conjunctive retrieval over the knowledge base. Supported predicates:
// the element kinds (task/1, comp_act/1, ..., plus activity, event,
// gateway, flow_element), bp/3, comp_act/3, seq/3, exception/3, input/3,
// output/3, assigned/3, item/1, participant/1, reachable/3,
// n_reachable/4, sigma/2, t/3, `=` and holds(f, s0(p)).
//
// A process argument p also matches facts of processes nested in p, and
// reachable/3 compares elements through the compound activities that
// contain them. In holds literals, cf/en/wrtn atoms that name an element
// of a nested process are redirected to that process.
class Retriever {
 public:
  explicit Retriever(const EnactmentContext& ctx, std::size_t budget = kDefaultStateBudget);

  // Throws QueryRejected when the conjunction is not an NF-query.
  std::vector<Substitution> retrieve(const std::vector<QueryLiteral>& conjunction);
  // Union over the disjuncts.
  std::vector<Substitution> retrieve(const std::vector<std::vector<QueryLiteral>>& disjuncts);

  // Built on first use.
  Analysis& analysis(const ElementId& process);

 private:
  std::vector<Substitution> extend(const QueryLiteral& l, const Substitution& theta);
  std::vector<Substitution> predicate(const QueryLiteral& l, const Substitution& theta);
  std::vector<Substitution> holds_literal(const QueryLiteral& l, const Substitution& theta);
  bool lifted_reachable(const ElementId& x, const ElementId& y, const ElementId& p);

  const EnactmentContext& ctx_;
  std::size_t budget_;
  std::map<ElementId, std::unique_ptr<Analysis>> analyses_;
  std::map<std::array<ElementId, 3>, bool> reach_memo_;
};

// ---------------------------------------------------------------------------
// Traces.

using Trace = std::vector<Action>;
std::string to_string(const Trace& t);
// `[complete(s), begin(a), ...]`; the brackets are optional.
Trace parse_trace(std::string_view text);

// Whether the actions lead from the initial state of p to a state where
// final(p) holds.
bool check_trace(const Trace& trace, const ElementId& process, const EnactmentContext& ctx);

// complete(first) occurs before some later complete(second).
struct OrderConstraint {
  ElementId first;
  ElementId second;
};
bool satisfies(const Trace& trace, const OrderConstraint& c);

// All correct traces of at most `max_len` actions satisfying `cond`,
// sorted. Throws InputError when more than `limit` traces are found.
std::vector<Trace> generate_traces(const ElementId& process, const EnactmentContext& ctx, std::size_t max_len,
                                   const std::optional<OrderConstraint>& cond = std::nullopt,
                                   std::size_t limit = 100000);

}  // namespace bpkb

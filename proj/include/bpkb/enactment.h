#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bpkb/context.h"
#include "bpkb/fluent.h"
#include "bpkb/fluent_expr.h"

namespace bpkb {

inline constexpr std::size_t kDefaultStateBudget = 200000;

std::shared_ptr<const Derivation> derived_closure(const State& state, const EnactmentContext& ctx);

// Ground fluent: cf/en/wrtn by membership, tf by membership in the closure.
bool holds(const Fluent& f, const State& state, const EnactmentContext& ctx);

// Ground expressions are evaluated directly. Variables are read
// existentially, and a variable that is still unbound when a `not` is
// reached is local to that negation (¬∃).
bool holds(const FluentExpr& e, const State& state, const EnactmentContext& ctx);

// All substitutions θ, extending `initial`, with holds(e·θ, state).
// Conjunctions bind left to right; a `not` reached with unbound variables
// throws UnsafeNegation. The result is sorted and duplicate-free.
std::vector<Substitution> match(const FluentExpr& e, const State& state, const EnactmentContext& ctx,
                                const Substitution& initial = {});

// {cf(start, s, p)} for a top-level process p. Throws InputError otherwise.
State initial_state(const ElementId& process, const EnactmentContext& ctx);

struct Transition {
  Action action;
  State target;
  auto operator<=>(const Transition&) const = default;
};

// Every (action, state) pair the transition rules allow from `state`,
// sorted.
std::vector<Transition> successors(const State& state, const EnactmentContext& ctx);

// One way of completing an executing activity: the effect alternative that
// was applied (null for the default effect), its binding and the result.
struct Completion {
  ElementId activity;
  ElementId process;
  const Effect* effect = nullptr;
  Substitution binding;
  std::vector<Fluent> negative;  // E⁻·θ
  State target;
};

std::vector<Completion> completions(const State& state, const ElementId& activity,
                                    const EnactmentContext& ctx);

struct Edge {
  std::size_t from = 0;
  Action action;
  std::size_t to = 0;
  auto operator<=>(const Edge&) const = default;
};

class KripkeGraph {
 public:
  ElementId process;
  std::vector<State> states;
  std::size_t initial = 0;
  std::vector<Edge> edges;

  std::size_t size() const { return states.size(); }
  // Indices into `edges` leaving state i.
  const std::vector<std::size_t>& out_edges(std::size_t i) const { return out_[i]; }
  // Distinct successor states of i, ascending.
  const std::vector<std::size_t>& successors(std::size_t i) const { return succ_[i]; }
  const std::vector<std::size_t>& predecessors(std::size_t i) const { return pred_[i]; }
  bool is_sink(std::size_t i) const { return succ_[i].empty(); }
  std::vector<std::size_t> sinks() const;
  std::optional<std::size_t> index_of(const State& s) const;

  // Recomputes adjacency from `edges`; call after editing states/edges.
  void index();

  // `state i: {...}`, `edge i action j`, `sink i` lines.
  std::string to_text() const;

 private:
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<std::size_t>> pred_;
  std::unordered_map<State, std::size_t, StateHash> lookup_;
};

// Breadth-first closure of `successors` from initial_state(process). States
// are numbered in discovery order with successors taken in sorted order,
// so the result is the same on every run. Throws BudgetExceeded when more
// than `budget` states are found.
KripkeGraph state_space(const ElementId& process, const EnactmentContext& ctx,
                        std::size_t budget = kDefaultStateBudget);

struct ConsistencyViolation {
  enum class Kind { kInconsistentState, kNegativeEffectHolds };
  Kind kind;
  std::size_t state;                // the inconsistent state, or the edge target
  std::optional<std::size_t> edge;  // index into graph.edges for clause (ii)
  std::optional<Fluent> fluent;     // the negative effect that still holds
  std::string message;
};

struct ConsistencyReport {
  std::vector<ConsistencyViolation> violations;
  bool ok() const { return violations.empty(); }
};

// (i) states whose closure contains `false`; (ii) complete(a) edges after
// which an instantiated negative effect of a still holds.
ConsistencyReport consistency_check(const KripkeGraph& graph, const EnactmentContext& ctx);

}  // namespace bpkb

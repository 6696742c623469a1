#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bpkb/enactment.h"
#include "bpkb/fluent_expr.h"
#include "bpkb/term.h"

namespace bpkb {

class Scanner;

// CTL over fluent atoms. EF, AG and OR are rewritten into the core
// operators when built.
struct Formula {
  enum class Kind { kTrue, kFalse, kAtom, kFinal, kNot, kAnd, kEX, kEU, kEG };
  Kind kind = Kind::kTrue;
  FluentPattern atom;  // kAtom
  Term process;        // kFinal
  std::vector<Formula> operands;

  static Formula truth() { return {}; }
  static Formula falsity();
  static Formula fluent(FluentPattern p);
  static Formula final_of(Term process);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula ex(Formula f);
  static Formula eu(Formula a, Formula b);
  static Formula eg(Formula f);
  static Formula ef(Formula f);
  static Formula ag(Formula f);
  // true, fluents, not and and carry over unchanged.
  static Formula from(const FluentExpr& e);

  bool is_elementary() const { return kind == Kind::kAtom || kind == Kind::kFinal; }
  bool operator==(const Formula&) const = default;
};

// Lowercase prefix syntax, with eu(true,F) printed as ef(F) and
// not(ef(not(F))) as ag(F). parse_formula reads it back.
std::string to_string(const Formula& f);
Formula apply(const Substitution& theta, const Formula& f);
// Variables in order of first (leftmost) occurrence.
std::vector<std::string> variables(const Formula& f);
bool is_ground(const Formula& f);
std::size_t depth(const Formula& f);

// Accepts prefix (`ef(f)`, `and(f,g)`, `not(f)`) and infix (`f AND g`,
// `f OR g`, `NOT f`) forms in either case, with fluent atoms cf/en/wrtn/tf/t,
// final(p), true and false. `?x` and uppercase-initial names are variables.
Formula parse_formula(std::string_view text);
// Parses at the scanner position and stops before an unmatched `)`, `|`,
// `]` or the end. With `lenient_close`, a group left open when `|` or `]`
// is reached counts as closed.
Formula parse_formula(Scanner& in, bool lenient_close = false);

// Evaluates formulas over one Kripke graph. Results are cached per
// normalized subformula as one bit per state, so each subformula is
// computed once. Safe to share between threads.
class ModelChecker {
 public:
  ModelChecker(const KripkeGraph& graph, const EnactmentContext& ctx);

  // `f` must be ground; throws InputError otherwise.
  bool eval(const Formula& f, std::size_t state);
  std::vector<bool> states_satisfying(const Formula& f);

  // Every θ (extending `initial`) with eval(f·θ, state). Candidate values
  // come from the grounding atoms of f matched against reachable states,
  // so f must pass validate_nf; throws QueryRejected otherwise.
  std::vector<Substitution> eval_open(const Formula& f, std::size_t state,
                                      const Substitution& initial = {});

  const KripkeGraph& graph() const { return graph_; }
  const EnactmentContext& context() const { return ctx_; }
  std::size_t memo_size() const;

 private:
  using Bits = std::vector<bool>;
  const Bits& sat(const Formula& f);
  Bits compute(const Formula& f);
  Bits elementary(const Formula& f);

  const KripkeGraph& graph_;
  const EnactmentContext& ctx_;
  mutable std::recursive_mutex mutex_;
  std::unordered_map<std::string, Bits> memo_;
};

// ---------------------------------------------------------------------------
// Non-floundering check.

// One literal of a conjunctive query as the NF check sees it: either an
// ordinary predicate (every argument an output) or holds(f, s0(process)),
// whose process argument is an input.
struct QueryLiteral {
  enum class Kind { kPredicate, kEquality, kHolds };
  Kind kind = Kind::kPredicate;
  bool positive = true;
  std::string predicate;
  std::vector<Term> args;  // kPredicate, kEquality (two terms)
  Formula formula;         // kHolds
  Term process;            // kHolds

  static QueryLiteral atom(std::string predicate, std::vector<Term> args, bool positive = true);
  static QueryLiteral equality(Term a, Term b, bool positive = true);
  static QueryLiteral holds(Formula f, Term process, bool positive = true);
};
std::string to_string(const QueryLiteral& l);

enum class NFRule { kWellModedness, kGroundingSubformula, kUnsafeNegation };
std::string_view nf_rule_name(NFRule rule);

struct NFViolation {
  NFRule rule;
  std::size_t literal = 0;  // 0-based position in the query
  std::string variable;
  std::string message;
};

struct NFReport {
  std::vector<NFViolation> violations;
  bool accepted() const { return violations.empty(); }
  std::string to_string() const;
};

NFReport validate_nf(const std::vector<QueryLiteral>& query);
// A single holds(f, s0(p)) literal with a ground process.
NFReport validate_nf(const Formula& f);

// The atoms of f in grounding position, left to right.
std::vector<const Formula*> grounding_atoms(const Formula& f);

}  // namespace bpkb

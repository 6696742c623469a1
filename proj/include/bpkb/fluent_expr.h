#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "bpkb/fluent.h"
#include "bpkb/term.h"

namespace bpkb {

class Scanner;

// A fluent whose arguments may be variables.
struct FluentPattern {
  FluentKind kind = FluentKind::kTf;
  std::array<Term, 3> args;

  bool is_ground() const;
  // Requires is_ground().
  Fluent ground() const;
  auto operator<=>(const FluentPattern&) const = default;
};

FluentPattern pattern_of(const Fluent& f);
FluentPattern apply(const Substitution& theta, const FluentPattern& p);
std::string to_string(const FluentPattern& p);
// Extends `theta` so that p·theta == f. Leaves `theta` unspecified on failure.
bool unify(const FluentPattern& p, const Fluent& f, Substitution& theta);
// Variables in order of first occurrence, appended to `out` if not present.
void collect_variables(const FluentPattern& p, std::vector<std::string>& out);

// true | fluent | not(e) | and(e1, e2, ...)
struct FluentExpr {
  enum class Kind { kTrue, kAtom, kNot, kAnd };
  Kind kind = Kind::kTrue;
  FluentPattern atom;
  std::vector<FluentExpr> operands;

  static FluentExpr truth() { return {}; }
  static FluentExpr of(FluentPattern p);
  static FluentExpr negation(FluentExpr e);
  static FluentExpr conjunction(std::vector<FluentExpr> parts);

  bool operator==(const FluentExpr&) const = default;
};

FluentExpr apply(const Substitution& theta, const FluentExpr& e);
std::string to_string(const FluentExpr& e);
void collect_variables(const FluentExpr& e, std::vector<std::string>& out);
std::vector<std::string> variables(const FluentExpr& e);

bool is_fluent_functor(std::string_view name);

// Parses the arguments of a fluent whose functor (`cf`, `en`, `wrtn`, `tf`
// or `t`) has just been consumed.
FluentPattern parse_fluent_arguments(Scanner& in, std::string_view functor, bool uppercase_variables);

// Parses a fluent expression at the scanner position.
FluentExpr parse_fluent_expr(Scanner& in, bool uppercase_variables);
// Whole-text variant; `?x` and uppercase-initial names are variables.
FluentExpr parse_fluent_expr(std::string_view text);

}  // namespace bpkb

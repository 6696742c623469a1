#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpkb/ctl.h"
#include "bpkb/services.h"
#include "bpkb/term.h"

namespace bpkb {

// Leaf of a WHERE clause.
struct QueryAtom {
  enum class Kind { kPredicate, kEquality, kCtl };
  Kind kind = Kind::kPredicate;
  std::string predicate;
  std::vector<Term> args;
  // Per argument: the concept C of a `?x::C` annotation, if any.
  std::vector<std::optional<std::string>> annotations;
  Formula formula;  // kCtl
  Term process;     // kCtl

  bool operator==(const QueryAtom&) const = default;
};

struct Condition {
  enum class Kind { kAtom, kAnd, kOr, kNot };
  Kind kind = Kind::kAtom;
  QueryAtom atom;
  std::vector<Condition> operands;

  bool operator==(const Condition&) const = default;
};

struct QueryAst {
  // `SELECT <>`, `SELECT <?p>`, `SELECT ?a ?b`, `SELECT *`.
  enum class Select { kBoolean, kProcess, kVariables, kAll };
  Select select = Select::kBoolean;
  std::vector<std::string> variables;
  Condition where;

  bool operator==(const QueryAst&) const = default;
};

// SELECT-WHERE syntax. WHERE combines predicate atoms (arguments may carry
// `::Concept`), `t = u`, `[formula | process]` and holds(formula, s0(p))
// with AND, OR, NOT and parentheses. A CTL block left unclosed before `|`
// is accepted. Throws ParseError with line and column.
QueryAst parse_query(std::string_view text);
std::string to_string(const QueryAst& q);
std::string to_string(const Condition& c);

// Disjunctive normal form, keeping the written order of literals. An
// annotated argument `x::C` adds sigma(x, C) right after its atom.
std::vector<std::vector<QueryLiteral>> to_dnf(const Condition& where);

// Variables in order of first occurrence.
std::vector<std::string> variables(const QueryAst& q);

struct QueryResult {
  bool boolean = false;  // the answer set is non-empty
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // sorted, duplicate-free
};

// Splits a query file on lines holding a single `;`, dropping `%`
// comments and empty pieces.
std::vector<std::string> split_queries(std::string_view text);

// Evaluates each disjunct as an NF-query and projects onto the selection.
// Throws QueryRejected.
QueryResult run_query(const QueryAst& q, Retriever& retriever);

}  // namespace bpkb

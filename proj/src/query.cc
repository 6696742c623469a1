#include <algorithm>
#include <set>

#include "bpkb/error.h"
#include "bpkb/query.h"
#include "bpkb/text.h"

namespace bpkb {
namespace {

Condition leaf(QueryAtom atom) {
  Condition c;
  c.atom = std::move(atom);
  return c;
}

Condition node(Condition::Kind kind, std::vector<Condition> operands) {
  Condition c;
  c.kind = kind;
  c.operands = std::move(operands);
  return c;
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : in_(text, 1, false) {}

  QueryAst parse() {
    QueryAst q;
    if (!keyword("SELECT")) in_.fail("expected SELECT");
    if (in_.consume('<')) {
      if (in_.consume('>')) {
        q.select = QueryAst::Select::kBoolean;
      } else {
        in_.skip_space();
        Term t = in_.term(true, true);
        if (t.is_constant()) in_.fail("expected a variable in the process selector");
        q.select = QueryAst::Select::kProcess;
        q.variables.push_back(t.name);
        in_.expect('>');
      }
    } else if (in_.consume('*')) {
      q.select = QueryAst::Select::kAll;
    } else {
      q.select = QueryAst::Select::kVariables;
      while (in_.peek() == '?') {
        Term t = in_.term(true, false);
        q.variables.push_back(t.name);
      }
      if (q.variables.empty()) in_.fail("expected <>, *, or variables after SELECT");
    }
    if (!keyword("WHERE")) in_.fail("expected WHERE");
    if (in_.at_end()) in_.fail("expected a condition after WHERE");
    q.where = disjunction();
    if (!in_.at_end()) in_.fail("unexpected text after the query");
    return q;
  }

 private:
  bool keyword(std::string_view upper) {
    std::string low(upper);
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
    return in_.consume_word(upper) || in_.consume_word(low);
  }

  Condition disjunction() {
    std::vector<Condition> parts{conjunction()};
    while (keyword("OR")) parts.push_back(conjunction());
    return parts.size() == 1 ? std::move(parts[0]) : node(Condition::Kind::kOr, std::move(parts));
  }

  Condition conjunction() {
    std::vector<Condition> parts{negation()};
    while (keyword("AND")) parts.push_back(negation());
    return parts.size() == 1 ? std::move(parts[0]) : node(Condition::Kind::kAnd, std::move(parts));
  }

  Condition negation() {
    if (keyword("NOT")) return node(Condition::Kind::kNot, {negation()});
    return primary();
  }

  // A term, with an optional `::Concept` suffix split off.
  Term term(std::optional<std::string>* annotation) {
    in_.skip_space();
    std::size_t line = in_.line();
    std::size_t column = in_.column();
    Term t = in_.term(true, true);
    auto cut = t.name.find("::");
    if (cut != std::string::npos) {
      if (!annotation) throw ParseError("'::' annotation is not allowed here", line, column);
      std::string concept_part = t.name.substr(cut + 2);
      t.name.resize(cut);
      if (t.name.empty() || concept_part.empty()) throw ParseError("malformed '::' annotation", line, column);
      *annotation = std::move(concept_part);
    }
    return t;
  }

  Condition ctl_block() {
    QueryAtom a;
    a.kind = QueryAtom::Kind::kCtl;
    a.formula = parse_formula(in_, true);
    in_.expect('|');
    a.process = term(nullptr);
    in_.expect(']');
    return leaf(std::move(a));
  }

  Condition primary() {
    if (in_.consume('(')) {
      Condition c = disjunction();
      in_.expect(')');
      return c;
    }
    if (in_.consume('[')) return ctl_block();
    std::size_t line = in_.line();
    std::size_t column = in_.column();
    if (in_.at_end()) in_.fail("expected a condition but the query ended");
    std::optional<std::string> annotation;
    Term first = term(&annotation);
    if (in_.peek() == '(' && !annotation) {
      if (first.is_variable()) throw ParseError("predicate names must start with a lowercase letter", line, column);
      QueryAtom a;
      if (first.name == "holds") {
        in_.expect('(');
        a.kind = QueryAtom::Kind::kCtl;
        a.formula = parse_formula(in_, false);
        in_.expect(',');
        if (!in_.consume_word("s0")) in_.fail("expected s0(process) as the state of holds");
        in_.expect('(');
        a.process = term(nullptr);
        in_.expect(')');
        in_.expect(')');
        return leaf(std::move(a));
      }
      a.predicate = first.name;
      in_.expect('(');
      if (!in_.consume(')')) {
        do {
          std::optional<std::string> ann;
          a.args.push_back(term(&ann));
          a.annotations.push_back(std::move(ann));
        } while (in_.consume(','));
        in_.expect(')');
      }
      return leaf(std::move(a));
    }
    if (annotation) throw ParseError("'::' annotation outside a predicate argument", line, column);
    in_.expect('=');
    QueryAtom a;
    a.kind = QueryAtom::Kind::kEquality;
    a.predicate = "=";
    a.args = {first, term(nullptr)};
    a.annotations.resize(2);
    return leaf(std::move(a));
  }

  Scanner in_;
};

std::string atom_text(const QueryAtom& a) {
  switch (a.kind) {
    case QueryAtom::Kind::kEquality:
      return to_string(a.args[0]) + " = " + to_string(a.args[1]);
    case QueryAtom::Kind::kCtl:
      return "[" + to_string(a.formula) + " | " + to_string(a.process) + "]";
    case QueryAtom::Kind::kPredicate: {
      std::string out = a.predicate + "(";
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(a.args[i]);
        if (i < a.annotations.size() && a.annotations[i]) out += "::" + *a.annotations[i];
      }
      return out + ")";
    }
  }
  return {};
}

std::vector<QueryLiteral> literals(const QueryAtom& a) {
  switch (a.kind) {
    case QueryAtom::Kind::kEquality:
      return {QueryLiteral::equality(a.args[0], a.args[1])};
    case QueryAtom::Kind::kCtl:
      return {QueryLiteral::holds(a.formula, a.process)};
    case QueryAtom::Kind::kPredicate:
      break;
  }
  std::vector<QueryLiteral> out{QueryLiteral::atom(a.predicate, a.args)};
  for (std::size_t i = 0; i < a.args.size() && i < a.annotations.size(); ++i) {
    if (a.annotations[i]) out.push_back(QueryLiteral::atom("sigma", {a.args[i], Term::constant(*a.annotations[i])}));
  }
  return out;
}

using Dnf = std::vector<std::vector<QueryLiteral>>;

Dnf product(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      auto c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

Dnf dnf(const Condition& c, bool positive) {
  switch (c.kind) {
    case Condition::Kind::kNot:
      return dnf(c.operands[0], !positive);
    case Condition::Kind::kAnd:
    case Condition::Kind::kOr: {
      bool conjunctive = (c.kind == Condition::Kind::kAnd) == positive;
      Dnf out = conjunctive ? Dnf{{}} : Dnf{};
      for (const auto& op : c.operands) {
        Dnf part = dnf(op, positive);
        if (conjunctive) {
          out = product(out, part);
        } else {
          out.insert(out.end(), part.begin(), part.end());
        }
      }
      return out;
    }
    case Condition::Kind::kAtom:
      break;
  }
  auto lits = literals(c.atom);
  if (positive) return {lits};
  // not(l1 and l2 ...) = not l1 or not l2 ...
  Dnf out;
  for (auto& l : lits) {
    l.positive = false;
    out.push_back({std::move(l)});
  }
  return out;
}

void collect(const Condition& c, std::vector<std::string>& out) {
  auto add = [&](const Term& t) {
    if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
  };
  if (c.kind == Condition::Kind::kAtom) {
    if (c.atom.kind == QueryAtom::Kind::kCtl) {
      for (const auto& v : variables(c.atom.formula)) add(Term::variable(v));
      add(c.atom.process);
    } else {
      for (const auto& t : c.atom.args) add(t);
    }
  }
  for (const auto& op : c.operands) collect(op, out);
}

}  // namespace

QueryAst parse_query(std::string_view text) { return QueryParser(text).parse(); }

std::string to_string(const Condition& c) {
  auto sub = [](const Condition& op) {
    std::string s = to_string(op);
    return op.kind == Condition::Kind::kAnd || op.kind == Condition::Kind::kOr ? "(" + s + ")" : s;
  };
  switch (c.kind) {
    case Condition::Kind::kAtom:
      return atom_text(c.atom);
    case Condition::Kind::kNot:
      return "NOT " + sub(c.operands[0]);
    case Condition::Kind::kAnd:
    case Condition::Kind::kOr: {
      std::string out;
      for (std::size_t i = 0; i < c.operands.size(); ++i) {
        if (i) out += c.kind == Condition::Kind::kAnd ? " AND " : " OR ";
        out += sub(c.operands[i]);
      }
      return out;
    }
  }
  return {};
}

std::string to_string(const QueryAst& q) {
  std::string out = "SELECT ";
  switch (q.select) {
    case QueryAst::Select::kBoolean:
      out += "<>";
      break;
    case QueryAst::Select::kProcess:
      out += "<?" + q.variables.front() + ">";
      break;
    case QueryAst::Select::kAll:
      out += "*";
      break;
    case QueryAst::Select::kVariables:
      for (std::size_t i = 0; i < q.variables.size(); ++i) out += (i ? " ?" : "?") + q.variables[i];
      break;
  }
  return out + " WHERE " + to_string(q.where);
}

std::vector<std::vector<QueryLiteral>> to_dnf(const Condition& where) { return dnf(where, true); }

std::vector<std::string> variables(const QueryAst& q) {
  std::vector<std::string> out;
  collect(q.where, out);
  return out;
}

std::vector<std::string> split_queries(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (const auto& line : logical_lines(text, true)) {
    if (line.text == ";") {
      if (!trim(current).empty()) out.push_back(current);
      current.clear();
    } else {
      current += line.text + "\n";
    }
  }
  if (!trim(current).empty()) out.push_back(current);
  return out;
}

QueryResult run_query(const QueryAst& q, Retriever& retriever) {
  auto answers = retriever.retrieve(to_dnf(q.where));
  QueryResult r;
  r.boolean = !answers.empty();
  switch (q.select) {
    case QueryAst::Select::kBoolean:
      return r;
    case QueryAst::Select::kAll:
      r.columns = variables(q);
      break;
    case QueryAst::Select::kProcess:
    case QueryAst::Select::kVariables:
      r.columns = q.variables;
      break;
  }
  auto known = variables(q);
  for (const auto& c : r.columns) {
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      throw QueryRejected("selected variable ?" + c + " does not occur in WHERE");
    }
  }
  std::set<std::vector<std::string>> rows;
  for (const auto& theta : answers) {
    std::vector<std::string> row;
    for (const auto& c : r.columns) {
      auto it = theta.find(c);
      row.push_back(it == theta.end() ? "" : it->second);
    }
    rows.insert(std::move(row));
  }
  r.rows.assign(rows.begin(), rows.end());
  return r;
}

}  // namespace bpkb

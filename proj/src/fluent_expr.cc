#include "bpkb/fluent_expr.h"

#include <algorithm>

#include "bpkb/error.h"
#include "bpkb/ontology.h"
#include "bpkb/text.h"

namespace bpkb {

bool FluentPattern::is_ground() const {
  return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

Fluent FluentPattern::ground() const {
  Fluent f;
  f.kind = kind;
  for (std::size_t i = 0; i < 3; ++i) f.args[i] = args[i].name;
  return f;
}

FluentPattern pattern_of(const Fluent& f) {
  FluentPattern p;
  p.kind = f.kind;
  for (std::size_t i = 0; i < 3; ++i) p.args[i] = Term::constant(f.args[i]);
  return p;
}

FluentPattern apply(const Substitution& theta, const FluentPattern& p) {
  FluentPattern out = p;
  for (auto& a : out.args) a = bpkb::apply(theta, a);
  return out;
}

std::string to_string(const FluentPattern& p) {
  std::string out = fluent_name(p.kind);
  out += "(";
  for (std::size_t i = 0; i < fluent_arity(p.kind); ++i) {
    if (i) out += ",";
    out += to_string(p.args[i]);
  }
  return out + ")";
}

bool unify(const FluentPattern& p, const Fluent& f, Substitution& theta) {
  if (p.kind != f.kind) return false;
  for (std::size_t i = 0; i < fluent_arity(p.kind); ++i) {
    const Term& t = p.args[i];
    if (t.is_constant()) {
      if (t.name != f.args[i]) return false;
      continue;
    }
    auto [it, inserted] = theta.emplace(t.name, f.args[i]);
    if (!inserted && it->second != f.args[i]) return false;
  }
  return true;
}

void collect_variables(const FluentPattern& p, std::vector<std::string>& out) {
  for (std::size_t i = 0; i < fluent_arity(p.kind); ++i) {
    const Term& t = p.args[i];
    if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end()) {
      out.push_back(t.name);
    }
  }
}

FluentExpr FluentExpr::of(FluentPattern p) {
  FluentExpr e;
  e.kind = Kind::kAtom;
  e.atom = std::move(p);
  return e;
}

FluentExpr FluentExpr::negation(FluentExpr inner) {
  FluentExpr e;
  e.kind = Kind::kNot;
  e.operands.push_back(std::move(inner));
  return e;
}

FluentExpr FluentExpr::conjunction(std::vector<FluentExpr> parts) {
  FluentExpr e;
  e.kind = Kind::kAnd;
  e.operands = std::move(parts);
  return e;
}

FluentExpr apply(const Substitution& theta, const FluentExpr& e) {
  FluentExpr out = e;
  if (out.kind == FluentExpr::Kind::kAtom) out.atom = apply(theta, e.atom);
  for (auto& op : out.operands) op = bpkb::apply(theta, op);
  return out;
}

std::string to_string(const FluentExpr& e) {
  switch (e.kind) {
    case FluentExpr::Kind::kTrue:
      return "true";
    case FluentExpr::Kind::kAtom:
      return to_string(e.atom);
    case FluentExpr::Kind::kNot:
      return "not(" + to_string(e.operands[0]) + ")";
    case FluentExpr::Kind::kAnd: {
      std::string out = "and(";
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) out += ",";
        out += to_string(e.operands[i]);
      }
      return out + ")";
    }
  }
  return {};
}

void collect_variables(const FluentExpr& e, std::vector<std::string>& out) {
  if (e.kind == FluentExpr::Kind::kAtom) collect_variables(e.atom, out);
  for (const auto& op : e.operands) collect_variables(op, out);
}

std::vector<std::string> variables(const FluentExpr& e) {
  std::vector<std::string> out;
  collect_variables(e, out);
  return out;
}

bool is_fluent_functor(std::string_view name) {
  return name == "cf" || name == "en" || name == "wrtn" || name == "tf" || name == "t";
}

FluentPattern parse_fluent_arguments(Scanner& in, std::string_view functor, bool uppercase_variables) {
  FluentPattern p;
  if (functor == "cf") {
    p.kind = FluentKind::kCf;
  } else if (functor == "en") {
    p.kind = FluentKind::kEn;
  } else if (functor == "wrtn") {
    p.kind = FluentKind::kWrtn;
  } else {
    p.kind = FluentKind::kTf;
  }
  std::size_t arity = fluent_arity(p.kind);
  in.expect('(');
  for (std::size_t i = 0; i < arity; ++i) {
    if (i) in.expect(',');
    in.skip_space();
    p.args[i] = in.term(true, uppercase_variables);
  }
  in.expect(')');
  if (p.kind == FluentKind::kTf && p.args[1].is_constant()) {
    p.args[1].name = canonical_term(p.args[1].name);
  }
  return p;
}

FluentExpr parse_fluent_expr(Scanner& in, bool uppercase_variables) {
  in.skip_space();
  if (!in.at_identifier()) in.fail("expected a fluent expression");
  std::string word = in.identifier();
  if (word == "true") return FluentExpr::truth();
  if (word == "not") {
    in.expect('(');
    FluentExpr inner = parse_fluent_expr(in, uppercase_variables);
    in.expect(')');
    return FluentExpr::negation(std::move(inner));
  }
  if (word == "and") {
    in.expect('(');
    std::vector<FluentExpr> parts;
    do {
      parts.push_back(parse_fluent_expr(in, uppercase_variables));
    } while (in.consume(','));
    in.expect(')');
    if (parts.size() < 2) in.fail("and(...) needs at least two operands");
    return FluentExpr::conjunction(std::move(parts));
  }
  if (is_fluent_functor(word)) return FluentExpr::of(parse_fluent_arguments(in, word, uppercase_variables));
  in.fail("unknown fluent expression '" + word + "'");
}

FluentExpr parse_fluent_expr(std::string_view text) {
  Scanner in(text, 1, false);
  FluentExpr e = parse_fluent_expr(in, true);
  if (!in.at_end()) in.fail("unexpected text after fluent expression");
  return e;
}

}  // namespace bpkb

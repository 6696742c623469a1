#include <algorithm>

#include "bpkb/ctl.h"

namespace bpkb {
namespace {

Formula unary(Formula::Kind kind, Formula f) {
  Formula out;
  out.kind = kind;
  out.operands.push_back(std::move(f));
  return out;
}

Formula binary(Formula::Kind kind, Formula a, Formula b) {
  Formula out;
  out.kind = kind;
  out.operands.push_back(std::move(a));
  out.operands.push_back(std::move(b));
  return out;
}

bool is_ef(const Formula& f) {
  return f.kind == Formula::Kind::kEU && f.operands[0].kind == Formula::Kind::kTrue;
}

void collect(const Formula& f, std::vector<std::string>& out) {
  if (f.kind == Formula::Kind::kAtom) collect_variables(f.atom, out);
  if (f.kind == Formula::Kind::kFinal && f.process.is_variable() &&
      std::find(out.begin(), out.end(), f.process.name) == out.end()) {
    out.push_back(f.process.name);
  }
  for (const auto& op : f.operands) collect(op, out);
}

}  // namespace

Formula Formula::falsity() {
  Formula f;
  f.kind = Kind::kFalse;
  return f;
}

Formula Formula::fluent(FluentPattern p) {
  Formula f;
  f.kind = Kind::kAtom;
  f.atom = std::move(p);
  return f;
}

Formula Formula::final_of(Term process) {
  Formula f;
  f.kind = Kind::kFinal;
  f.process = std::move(process);
  return f;
}

Formula Formula::negation(Formula f) { return unary(Kind::kNot, std::move(f)); }
Formula Formula::conjunction(Formula a, Formula b) { return binary(Kind::kAnd, std::move(a), std::move(b)); }

Formula Formula::disjunction(Formula a, Formula b) {
  return negation(conjunction(negation(std::move(a)), negation(std::move(b))));
}

Formula Formula::ex(Formula f) { return unary(Kind::kEX, std::move(f)); }
Formula Formula::eu(Formula a, Formula b) { return binary(Kind::kEU, std::move(a), std::move(b)); }
Formula Formula::eg(Formula f) { return unary(Kind::kEG, std::move(f)); }
Formula Formula::ef(Formula f) { return eu(truth(), std::move(f)); }
Formula Formula::ag(Formula f) { return negation(ef(negation(std::move(f)))); }

Formula Formula::from(const FluentExpr& e) {
  switch (e.kind) {
    case FluentExpr::Kind::kTrue:
      return truth();
    case FluentExpr::Kind::kAtom:
      return fluent(e.atom);
    case FluentExpr::Kind::kNot:
      return negation(from(e.operands[0]));
    case FluentExpr::Kind::kAnd: {
      Formula out = from(e.operands.back());
      for (std::size_t i = e.operands.size() - 1; i-- > 0;) out = conjunction(from(e.operands[i]), std::move(out));
      return out;
    }
  }
  return truth();
}

std::string to_string(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::kTrue:
      return "true";
    case K::kFalse:
      return "false";
    case K::kAtom:
      return to_string(f.atom);
    case K::kFinal:
      return "final(" + to_string(f.process) + ")";
    case K::kNot: {
      const Formula& g = f.operands[0];
      if (is_ef(g) && g.operands[1].kind == K::kNot) return "ag(" + to_string(g.operands[1].operands[0]) + ")";
      return "not(" + to_string(g) + ")";
    }
    case K::kAnd:
      return "and(" + to_string(f.operands[0]) + "," + to_string(f.operands[1]) + ")";
    case K::kEX:
      return "ex(" + to_string(f.operands[0]) + ")";
    case K::kEU:
      if (is_ef(f)) return "ef(" + to_string(f.operands[1]) + ")";
      return "eu(" + to_string(f.operands[0]) + "," + to_string(f.operands[1]) + ")";
    case K::kEG:
      return "eg(" + to_string(f.operands[0]) + ")";
  }
  return {};
}

Formula apply(const Substitution& theta, const Formula& f) {
  Formula out = f;
  if (out.kind == Formula::Kind::kAtom) out.atom = bpkb::apply(theta, f.atom);
  if (out.kind == Formula::Kind::kFinal) out.process = bpkb::apply(theta, f.process);
  for (auto& op : out.operands) op = bpkb::apply(theta, op);
  return out;
}

std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  collect(f, out);
  return out;
}

bool is_ground(const Formula& f) { return variables(f).empty(); }

std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& op : f.operands) d = std::max(d, depth(op));
  return d + 1;
}

}  // namespace bpkb

#include <algorithm>
#include <set>
#include <sstream>

#include "bpkb/ctl.h"

namespace bpkb {
namespace {

void grounding(const Formula& f, std::vector<const Formula*>& out) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::kAtom:
    case K::kFinal:
      out.push_back(&f);
      break;
    case K::kAnd:
      grounding(f.operands[0], out);
      grounding(f.operands[1], out);
      break;
    case K::kEX:
    case K::kEG:
      grounding(f.operands[0], out);
      break;
    case K::kEU:
      grounding(f.operands[1], out);
      break;
    default:
      break;
  }
}

bool mentions(const Formula& atom, const std::string& var) {
  if (atom.kind == Formula::Kind::kFinal) return atom.process.is_variable() && atom.process.name == var;
  for (const auto& t : atom.atom.args) {
    if (t.is_variable() && t.name == var) return true;
  }
  return false;
}

// The leftmost elementary subformula mentioning `var`.
const Formula* leftmost(const Formula& f, const std::string& var) {
  if (f.is_elementary()) return mentions(f, var) ? &f : nullptr;
  for (const auto& op : f.operands) {
    if (const Formula* hit = leftmost(op, var)) return hit;
  }
  return nullptr;
}

std::string literal_name(std::size_t i) { return "literal " + std::to_string(i + 1); }

}  // namespace

QueryLiteral QueryLiteral::atom(std::string predicate, std::vector<Term> args, bool positive) {
  QueryLiteral l;
  l.kind = Kind::kPredicate;
  l.positive = positive;
  l.predicate = std::move(predicate);
  l.args = std::move(args);
  return l;
}

QueryLiteral QueryLiteral::equality(Term a, Term b, bool positive) {
  QueryLiteral l;
  l.kind = Kind::kEquality;
  l.positive = positive;
  l.predicate = "=";
  l.args = {std::move(a), std::move(b)};
  return l;
}

QueryLiteral QueryLiteral::holds(Formula f, Term process, bool positive) {
  QueryLiteral l;
  l.kind = Kind::kHolds;
  l.positive = positive;
  l.predicate = "holds";
  l.formula = std::move(f);
  l.process = std::move(process);
  return l;
}

std::string to_string(const QueryLiteral& l) {
  std::string body;
  switch (l.kind) {
    case QueryLiteral::Kind::kPredicate: {
      body = l.predicate + "(";
      for (std::size_t i = 0; i < l.args.size(); ++i) {
        if (i) body += ",";
        body += to_string(l.args[i]);
      }
      body += ")";
      break;
    }
    case QueryLiteral::Kind::kEquality:
      body = to_string(l.args[0]) + " = " + to_string(l.args[1]);
      break;
    case QueryLiteral::Kind::kHolds:
      body = "holds(" + to_string(l.formula) + ",s0(" + to_string(l.process) + "))";
      break;
  }
  return l.positive ? body : "not " + body;
}

std::string_view nf_rule_name(NFRule rule) {
  switch (rule) {
    case NFRule::kWellModedness:
      return "well-modedness";
    case NFRule::kGroundingSubformula:
      return "grounding-subformula";
    case NFRule::kUnsafeNegation:
      return "unsafe-negation";
  }
  return "";
}

std::string NFReport::to_string() const {
  if (accepted()) return "accepted";
  std::ostringstream out;
  out << "rejected";
  for (const auto& v : violations) out << "\n  " << nf_rule_name(v.rule) << ": " << v.message;
  return out.str();
}

std::vector<const Formula*> grounding_atoms(const Formula& f) {
  std::vector<const Formula*> out;
  grounding(f, out);
  return out;
}

NFReport validate_nf(const std::vector<QueryLiteral>& query) {
  NFReport report;
  std::set<std::string> bound;
  auto flag = [&](NFRule rule, std::size_t i, const std::string& var, const std::string& why) {
    report.violations.push_back({rule, i, var, literal_name(i) + " (" + to_string(query[i]) + "): " + why});
  };
  for (std::size_t i = 0; i < query.size(); ++i) {
    const QueryLiteral& l = query[i];
    std::vector<std::string> fresh;
    auto note = [&](const Term& t) {
      if (t.is_variable() && !bound.count(t.name) &&
          std::find(fresh.begin(), fresh.end(), t.name) == fresh.end()) {
        fresh.push_back(t.name);
      }
    };
    switch (l.kind) {
      case QueryLiteral::Kind::kPredicate:
        for (const auto& t : l.args) note(t);
        if (!l.positive) {
          for (const auto& v : fresh) flag(NFRule::kUnsafeNegation, i, v, "?" + v + " first occurs in a negative literal");
        }
        break;
      case QueryLiteral::Kind::kEquality:
        for (const auto& t : l.args) note(t);
        if (!l.positive) {
          for (const auto& v : fresh) flag(NFRule::kUnsafeNegation, i, v, "?" + v + " first occurs in a negative literal");
        } else if (fresh.size() == 2) {
          flag(NFRule::kWellModedness, i, fresh[0], "both sides of '=' are unbound");
        }
        break;
      case QueryLiteral::Kind::kHolds: {
        if (l.process.is_variable() && !bound.count(l.process.name)) {
          flag(NFRule::kWellModedness, i, l.process.name,
               "the state argument s0(?" + l.process.name + ") is not bound by an earlier literal");
        }
        auto grounding_set = grounding_atoms(l.formula);
        for (const auto& v : variables(l.formula)) {
          if (bound.count(v)) continue;
          fresh.push_back(v);
          if (!l.positive) {
            flag(NFRule::kUnsafeNegation, i, v, "?" + v + " first occurs in a negative literal");
            continue;
          }
          const Formula* first = leftmost(l.formula, v);
          if (std::find(grounding_set.begin(), grounding_set.end(), first) == grounding_set.end()) {
            flag(NFRule::kGroundingSubformula, i, v,
                 to_string(*first) + " is not a grounding subformula of " + to_string(l.formula));
          }
        }
        if (l.process.is_variable()) note(l.process);
        break;
      }
    }
    bound.insert(fresh.begin(), fresh.end());
  }
  return report;
}

NFReport validate_nf(const Formula& f) { return validate_nf({QueryLiteral::holds(f, Term::constant("p"))}); }

}  // namespace bpkb

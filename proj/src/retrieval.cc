#include <algorithm>
#include <functional>

#include "bpkb/error.h"
#include "bpkb/process_model.h"
#include "bpkb/services.h"

namespace bpkb {
namespace {

struct Relation {
  std::vector<std::vector<std::string>> rows;
  int process_column = -1;  // matched hierarchically
};

std::optional<ElementKind> kind_named(std::string_view name) {
  for (int k = 0; k <= static_cast<int>(ElementKind::kParticipant); ++k) {
    auto kind = static_cast<ElementKind>(k);
    if (predicate_name(kind) == name) return kind;
  }
  return std::nullopt;
}

// Binds `t` to `value` in `theta`, or checks it.
bool bind_term(const Term& t, const std::string& value, Substitution& theta) {
  if (t.is_constant()) return t.name == value;
  auto [it, inserted] = theta.emplace(t.name, value);
  return inserted || it->second == value;
}

}  // namespace

Retriever::Retriever(const EnactmentContext& ctx, std::size_t budget) : ctx_(ctx), budget_(budget) {}

Analysis& Retriever::analysis(const ElementId& process) {
  auto it = analyses_.find(process);
  if (it == analyses_.end()) {
    it = analyses_.emplace(process, std::make_unique<Analysis>(process, ctx_, budget_)).first;
  }
  return *it->second;
}

std::vector<Substitution> Retriever::retrieve(const std::vector<QueryLiteral>& conjunction) {
  NFReport report = validate_nf(conjunction);
  if (!report.accepted()) throw QueryRejected(report.to_string());
  std::vector<Substitution> current{Substitution{}};
  for (const auto& l : conjunction) {
    std::vector<Substitution> next;
    for (const auto& theta : current) {
      auto more = extend(l, theta);
      next.insert(next.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
    if (current.empty()) break;
  }
  return current;
}

std::vector<Substitution> Retriever::retrieve(const std::vector<std::vector<QueryLiteral>>& disjuncts) {
  std::vector<Substitution> out;
  for (const auto& c : disjuncts) {
    auto more = retrieve(c);
    out.insert(out.end(), more.begin(), more.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Substitution> Retriever::extend(const QueryLiteral& l, const Substitution& theta) {
  switch (l.kind) {
    case QueryLiteral::Kind::kEquality: {
      Term a = bpkb::apply(theta, l.args[0]);
      Term b = bpkb::apply(theta, l.args[1]);
      if (a.is_constant() && b.is_constant()) {
        if ((a.name == b.name) == l.positive) return {theta};
        return {};
      }
      if (!l.positive) throw UnsafeNegation("negated '=' with an unbound side");
      if (a.is_variable() && b.is_variable()) throw UnsafeNegation("'=' with both sides unbound");
      Substitution out = theta;
      if (a.is_variable()) {
        out[a.name] = b.name;
      } else {
        out[b.name] = a.name;
      }
      return {out};
    }
    case QueryLiteral::Kind::kHolds:
      return holds_literal(l, theta);
    case QueryLiteral::Kind::kPredicate: {
      if (l.positive) return predicate(l, theta);
      QueryLiteral g = l;
      for (auto& t : g.args) {
        t = bpkb::apply(theta, t);
        if (t.is_variable()) throw UnsafeNegation("?" + t.name + " is unbound in " + to_string(l));
      }
      g.positive = true;
      if (predicate(g, theta).empty()) return {theta};
      return {};
    }
  }
  return {};
}

bool Retriever::lifted_reachable(const ElementId& x, const ElementId& y, const ElementId& p) {
  std::array<ElementId, 3> key{x, y, p};
  auto memo = reach_memo_.find(key);
  if (memo != reach_memo_.end()) return memo->second;
  const ProcessSchema& schema = ctx_.schema();
  // The element of q that is x or the compound activity containing x.
  auto lift = [&](const ElementId& e, const ElementId& q) -> std::optional<ElementId> {
    auto owner = schema.owner(e);
    if (!owner) return std::nullopt;
    if (*owner == q) return e;
    for (const auto& c : schema.elements_of(q)) {
      if (schema.compound(c) && schema.process_closure(c).count(*owner)) return c;
    }
    return std::nullopt;
  };
  bool result = false;
  for (const auto& q : schema.process_closure(p)) {
    auto lx = lift(x, q);
    auto ly = lift(y, q);
    if (!lx || !ly) continue;
    if (*lx == *ly && (*lx != x || *ly != y)) continue;
    if (seq_plus(*lx, *ly, q, schema)) {
      result = true;
      break;
    }
  }
  reach_memo_.emplace(key, result);
  return result;
}

std::vector<Substitution> Retriever::predicate(const QueryLiteral& l, const Substitution& theta) {
  const ProcessSchema& schema = ctx_.schema();
  const std::string& name = l.predicate;
  std::vector<Term> args;
  for (const auto& t : l.args) args.push_back(bpkb::apply(theta, t));
  auto arity_is = [&](std::size_t n) {
    if (args.size() != n) {
      throw InputError("predicate " + name + " takes " + std::to_string(n) + " arguments, got " +
                       std::to_string(args.size()));
    }
  };
  std::vector<Substitution> out;

  std::vector<ElementId> processes;
  for (const auto& p : schema.processes()) processes.push_back(p.id);
  for (const auto& [id, c] : schema.compounds()) processes.push_back(id);
  std::sort(processes.begin(), processes.end());
  processes.erase(std::unique(processes.begin(), processes.end()), processes.end());
  std::vector<ElementId> flow;
  for (const auto& [id, kinds] : schema.classification()) {
    if (std::any_of(kinds.begin(), kinds.end(), [](ElementKind k) { return is_flow_element(k); })) flow.push_back(id);
  }
  auto values = [&](const Term& t, const std::vector<ElementId>& domain) {
    if (t.is_constant()) return std::vector<ElementId>{t.name};
    return domain;
  };

  if (name == "reachable" || name == "n_reachable") {
    bool lifted = name == "reachable";
    arity_is(lifted ? 3 : 4);
    for (const auto& p : values(args.back(), processes)) {
      for (const auto& x : values(args[0], flow)) {
        for (const auto& y : values(args[1], flow)) {
          if (lifted) {
            if (!lifted_reachable(x, y, p)) continue;
            Substitution t = theta;
            if (bind_term(args[0], x, t) && bind_term(args[1], y, t) && bind_term(args[2], p, t)) out.push_back(std::move(t));
          } else {
            for (const auto& z : values(args[2], flow)) {
              if (!n_reachable(x, y, z, p, schema)) continue;
              Substitution t = theta;
              if (bind_term(args[0], x, t) && bind_term(args[1], y, t) && bind_term(args[2], z, t) && bind_term(args[3], p, t)) {
                out.push_back(std::move(t));
              }
            }
          }
        }
      }
    }
    return out;
  }

  if (name == "sigma") {
    arity_is(2);
    const TripleStore& store = ctx_.store();
    for (const auto& ta : ctx_.annotations().terms) {
      Substitution t = theta;
      if (!bind_term(args[0], ta.element, t)) continue;
      std::vector<std::string> classes{ta.concept_name};
      for (const auto& s : store.superclasses(ta.concept_name)) {
        if (s.rfind("_:", 0) != 0) classes.push_back(s);
      }
      for (const auto& c : classes) {
        Substitution u = t;
        if (bind_term(args[1], c, u)) out.push_back(std::move(u));
      }
    }
    return out;
  }

  if (name == "t") {
    arity_is(3);
    if (args[1].is_constant()) args[1].name = canonical_term(args[1].name);
    for (const auto& triple : ctx_.store().derived()) {
      if (triple.has_list_object()) continue;
      Substitution t = theta;
      if (bind_term(args[0], triple.subject, t) && bind_term(args[1], triple.predicate, t) &&
          bind_term(args[2], triple.object_name(), t)) {
        out.push_back(std::move(t));
      }
    }
    return out;
  }

  Relation rel;
  auto unary = [&](const std::function<bool(const ElementId&)>& keep) {
    for (const auto& [id, kinds] : schema.classification()) {
      if (keep(id)) rel.rows.push_back({id});
    }
  };
  auto has = [&](std::function<bool(ElementKind)> test) {
    return [&, test](const ElementId& id) {
      const auto& kinds = schema.classification().at(id);
      return std::any_of(kinds.begin(), kinds.end(), test);
    };
  };
  if (name == "activity") {
    unary(has(static_cast<bool (*)(ElementKind)>(is_activity)));
  } else if (name == "event") {
    unary(has(static_cast<bool (*)(ElementKind)>(is_event)));
  } else if (name == "gateway") {
    unary(has(static_cast<bool (*)(ElementKind)>(is_gateway)));
  } else if (name == "flow_element") {
    unary(has(static_cast<bool (*)(ElementKind)>(is_flow_element)));
  } else if (name == "bp") {
    for (const auto& p : schema.processes()) rel.rows.push_back({p.id, p.start, p.end});
  } else if (name == "comp_act" && args.size() == 3) {
    for (const auto& [id, c] : schema.compounds()) rel.rows.push_back({c.id, c.start, c.end});
  } else if (auto kind = kind_named(name)) {
    ElementKind k = *kind;
    unary([&](const ElementId& id) { return schema.has_kind(id, k); });
  } else if (name == "seq") {
    for (const auto& e : schema.seq()) rel.rows.push_back({e.from, e.to, e.process});
    rel.process_column = 2;
  } else if (name == "exception") {
    for (const auto& x : schema.exceptions()) rel.rows.push_back({x.event, x.activity, x.process});
    rel.process_column = 2;
  } else if (name == "input" || name == "output" || name == "assigned") {
    const auto& links = name == "input" ? schema.inputs() : name == "output" ? schema.outputs() : schema.assignments();
    for (const auto& a : links) rel.rows.push_back({a.activity, a.target, a.process});
    rel.process_column = 2;
  } else {
    throw InputError("unknown query predicate '" + name + "'");
  }
  if (!rel.rows.empty()) arity_is(rel.rows.front().size());

  for (const auto& row : rel.rows) {
    Substitution t = theta;
    bool ok = true;
    for (std::size_t i = 0; ok && i < row.size(); ++i) {
      if (static_cast<int>(i) != rel.process_column) ok = bind_term(args[i], row[i], t);
    }
    if (!ok) continue;
    if (rel.process_column < 0) {
      out.push_back(std::move(t));
      continue;
    }
    const Term& p = args[static_cast<std::size_t>(rel.process_column)];
    const ElementId& q = row[static_cast<std::size_t>(rel.process_column)];
    for (const auto& r : values(p, processes)) {
      if (!schema.process_closure(r).count(q)) continue;
      Substitution u = t;
      if (bind_term(p, r, u)) out.push_back(std::move(u));
    }
  }
  return out;
}

std::vector<Substitution> Retriever::holds_literal(const QueryLiteral& l, const Substitution& theta) {
  const ProcessSchema& schema = ctx_.schema();
  Term p = bpkb::apply(theta, l.process);
  if (p.is_variable()) throw QueryRejected("the state argument s0(?" + p.name + ") is unbound");
  if (!schema.top_level(p.name)) {
    if (schema.is_process(p.name)) return {};  // no initial state of its own
    throw InputError("unknown process '" + p.name + "'");
  }
  auto inner = schema.process_closure(p.name);
  std::function<void(Formula&)> redirect = [&](Formula& f) {
    for (auto& op : f.operands) redirect(op);
    if (f.kind != Formula::Kind::kAtom) return;
    std::size_t element;
    std::size_t process;
    switch (f.atom.kind) {
      case FluentKind::kCf:
        element = f.atom.args[1].is_constant() ? 1 : 0;
        process = 2;
        break;
      case FluentKind::kEn:
        element = 0;
        process = 1;
        break;
      case FluentKind::kWrtn:
        element = 0;
        process = 2;
        break;
      default:
        return;
    }
    Term& slot = f.atom.args[process];
    const Term& e = f.atom.args[element];
    if (slot.is_variable() || slot.name != p.name || e.is_variable()) return;
    auto owner = schema.owner(e.name);
    if (owner && *owner != p.name && inner.count(*owner)) slot.name = *owner;
  };
  Formula f = bpkb::apply(theta, l.formula);
  redirect(f);
  Analysis& a = analysis(p.name);
  if (!l.positive) {
    if (!is_ground(f)) throw UnsafeNegation("negated holds literal is not ground: " + to_string(f));
    if (a.checker().eval(f, a.graph().initial)) return {};
    return {theta};
  }
  return a.checker().eval_open(f, a.graph().initial, theta);
}

}  // namespace bpkb

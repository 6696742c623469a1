#include <algorithm>
#include <set>

#include "bpkb/enactment.h"
#include "bpkb/error.h"

namespace bpkb {
namespace {

class Solver {
 public:
  Solver(const State& state, const EnactmentContext& ctx, bool strict)
      : state_(state), ctx_(ctx), strict_(strict) {}

  std::vector<Substitution> solve(const FluentExpr& e, const Substitution& theta) {
    switch (e.kind) {
      case FluentExpr::Kind::kTrue:
        return {theta};
      case FluentExpr::Kind::kAtom:
        return atom(bpkb::apply(theta, e.atom), theta);
      case FluentExpr::Kind::kNot: {
        FluentExpr inner = bpkb::apply(theta, e.operands[0]);
        if (strict_) {
          auto unbound = variables(inner);
          if (!unbound.empty()) {
            throw UnsafeNegation("variable " + unbound.front() + " occurs only under negation in " +
                                 to_string(inner));
          }
        }
        if (solve(inner, theta).empty()) return {theta};
        return {};
      }
      case FluentExpr::Kind::kAnd: {
        std::vector<Substitution> current{theta};
        for (const auto& op : e.operands) {
          std::vector<Substitution> next;
          for (const auto& t : current) {
            auto more = solve(op, t);
            next.insert(next.end(), more.begin(), more.end());
          }
          current = std::move(next);
          if (current.empty()) break;
        }
        return current;
      }
    }
    return {};
  }

 private:
  std::vector<Substitution> atom(const FluentPattern& p, const Substitution& theta) {
    std::vector<Substitution> out;
    if (p.kind == FluentKind::kTf) {
      const Derivation& d = derivation();
      if (p.is_ground()) {
        if (d.contains({p.args[0].name, p.args[1].name, p.args[2].name})) out.push_back(theta);
        return out;
      }
      auto begin = d.facts.begin();
      auto end = d.facts.end();
      if (p.args[0].is_constant()) {
        begin = d.facts.lower_bound({p.args[0].name, "", ""});
      }
      for (auto it = begin; it != end; ++it) {
        if (p.args[0].is_constant() && (*it)[0] != p.args[0].name) break;
        Substitution t = theta;
        if (unify(p, Fluent::tf((*it)[0], (*it)[1], (*it)[2]), t)) out.push_back(std::move(t));
      }
      return out;
    }
    if (p.is_ground()) {
      if (state_.contains(p.ground())) out.push_back(theta);
      return out;
    }
    for (const auto& f : state_.fluents()) {
      if (f.kind != p.kind) continue;
      Substitution t = theta;
      if (unify(p, f, t)) out.push_back(std::move(t));
    }
    return out;
  }

  const Derivation& derivation() {
    if (!derivation_) derivation_ = ctx_.closure(state_);
    return *derivation_;
  }

  const State& state_;
  const EnactmentContext& ctx_;
  bool strict_;
  std::shared_ptr<const Derivation> derivation_;
};

void normalize(std::vector<Substitution>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Fluent instantiate(const FluentPattern& p, const Substitution& theta, const ElementId& activity) {
  FluentPattern g = bpkb::apply(theta, p);
  if (!g.is_ground()) {
    throw InputError("effect " + to_string(p) + " of '" + activity +
                     "' has a variable that its qualifier does not bind");
  }
  return g.ground();
}

class Rules {
 public:
  Rules(const State& state, const EnactmentContext& ctx)
      : s_(state), ctx_(ctx), schema_(ctx.schema()), ann_(ctx.annotations()) {}

  std::vector<Transition> run() {
    std::set<std::pair<ElementId, ElementId>> merges_done;
    for (const auto& f : s_.fluents()) {
      if (f.kind == FluentKind::kCf) {
        control(f, merges_done);
      } else if (f.kind == FluentKind::kEn) {
        executing(f.args[0], f.args[1]);
      }
    }
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

  std::vector<Completion> completions_of(const ElementId& a, const ElementId& p) {
    std::vector<Completion> out;
    const auto& succ = schema_.successors(a, p);
    if (succ.empty()) return out;
    std::vector<Fluent> removed{Fluent::en(a, p)};
    if (const ProcessRecord* c = schema_.compound(a)) {
      Fluent done = Fluent::cf(c->end, kEndToken, a);
      if (!s_.contains(done)) return out;
      removed.push_back(done);
    } else if (!schema_.has_kind(a, ElementKind::kTask)) {
      return out;
    }
    std::vector<Fluent> written;
    for (const auto& item : schema_.outputs_of(a, p)) written.push_back(Fluent::wrtn(a, item, p));

    auto effects = ann_.effects_of(a, p);
    std::vector<const Effect*> alternatives(effects.begin(), effects.end());
    if (alternatives.empty()) alternatives.push_back(nullptr);
    for (const Effect* eff : alternatives) {
      std::vector<Substitution> bindings{Substitution{}};
      if (eff) bindings = match(eff->qualifier, s_, ctx_);
      for (const auto& theta : bindings) {
        std::vector<Fluent> neg, pos;
        if (eff) {
          for (const auto& f : eff->negative) neg.push_back(instantiate(f, theta, a));
          for (const auto& f : eff->positive) pos.push_back(instantiate(f, theta, a));
        }
        std::vector<Fluent> rem = removed;
        rem.insert(rem.end(), neg.begin(), neg.end());
        for (const auto& y : succ) {
          std::vector<Fluent> add{Fluent::cf(a, y, p)};
          add.insert(add.end(), pos.begin(), pos.end());
          add.insert(add.end(), written.begin(), written.end());
          out.push_back({a, p, eff, theta, neg, s_.update(rem, add)});
        }
      }
    }
    return out;
  }

 private:
  void emit(Action a, const std::vector<Fluent>& removed, const std::vector<Fluent>& added) {
    out_.push_back({std::move(a), s_.update(removed, added)});
  }

  void control(const Fluent& f, std::set<std::pair<ElementId, ElementId>>& merges_done) {
    const ElementId& x = f.args[0];
    const ElementId& e = f.args[1];
    const ElementId& p = f.args[2];
    auto kind = schema_.kind(e);
    if (!kind) return;
    switch (*kind) {
      case ElementKind::kStartEvent:
        if (x == kStartToken) flow_on(e, f, p);  // E1
        break;
      case ElementKind::kEndEvent:  // E2
        emit(Action::complete(e), {f}, {Fluent::cf(e, kEndToken, p)});
        break;
      case ElementKind::kIntermediateEvent:  // E3
      case ElementKind::kExclusiveMerge:     // X1
        flow_on(e, f, p);
        break;
      case ElementKind::kTask:  // A1
        if (can_begin(e, p)) emit(Action::begin(e), {f}, {Fluent::en(e, p)});
        break;
      case ElementKind::kCompoundActivity:  // A3
        if (!s_.contains(Fluent::en(e, p)) && can_begin(e, p)) {
          const ProcessRecord* c = schema_.compound(e);
          emit(Action::begin(e), {f}, {Fluent::cf(kStartToken, c->start, e), Fluent::en(e, p)});
        }
        break;
      case ElementKind::kExclusiveBranch:  // B1
        for (const auto& y : enabled_successors(e, p)) {
          emit(Action::complete(e), {f}, {Fluent::cf(e, y, p)});
        }
        break;
      case ElementKind::kInclusiveBranch:  // B2
        inclusive_branch(e, f, p);
        break;
      case ElementKind::kParallelBranch: {  // B3
        std::vector<Fluent> added;
        for (const auto& y : schema_.successors(e, p)) added.push_back(Fluent::cf(e, y, p));
        if (!added.empty()) emit(Action::complete(e), {f}, added);
        break;
      }
      case ElementKind::kInclusiveMerge:  // O1-O5
        if (merges_done.insert({e, p}).second) inclusive_merge(e, p);
        break;
      case ElementKind::kParallelMerge:  // P1-P2
        if (merges_done.insert({e, p}).second) parallel_merge(e, p);
        break;
      default:
        break;
    }
  }

  void flow_on(const ElementId& e, const Fluent& consumed, const ElementId& p) {
    for (const auto& y : schema_.successors(e, p)) {
      emit(Action::complete(e), {consumed}, {Fluent::cf(e, y, p)});
    }
  }

  bool can_begin(const ElementId& a, const ElementId& p) {
    for (const auto& item : schema_.inputs_of(a, p)) {
      bool written = std::any_of(s_.fluents().begin(), s_.fluents().end(), [&](const Fluent& w) {
        return w.kind == FluentKind::kWrtn && w.args[1] == item && w.args[2] == p;
      });
      if (!written) return false;  // blocked_input
    }
    auto pres = ann_.preconditions_of(a, p);
    if (pres.empty()) return true;
    return std::any_of(pres.begin(), pres.end(),
                       [&](const Precondition* pre) { return holds(pre->condition, s_, ctx_); });
  }

  // Successors of a decision point whose guard holds. On a gateway with no
  // guards every successor qualifies; on a guarded one, flows without a
  // guard count as guarded by `true`.
  std::vector<ElementId> enabled_successors(const ElementId& b, const ElementId& p) {
    std::vector<ElementId> out;
    bool guarded = ann_.is_guarded(b, p);
    for (const auto& y : schema_.successors(b, p)) {
      const FluentExpr* g = guarded ? ann_.guard_of(b, y, p) : nullptr;
      if (!g || holds(*g, s_, ctx_)) out.push_back(y);
    }
    return out;
  }

  void inclusive_branch(const ElementId& b, const Fluent& consumed, const ElementId& p) {
    if (ann_.is_guarded(b, p)) {
      std::vector<Fluent> added;
      for (const auto& y : enabled_successors(b, p)) added.push_back(Fluent::cf(b, y, p));
      if (!added.empty()) emit(Action::complete(b), {consumed}, added);
      return;
    }
    const auto& succ = schema_.successors(b, p);
    if (succ.size() >= 20) throw InputError("inclusive branch '" + b + "' has too many successors");
    for (std::size_t mask = 1; mask < (std::size_t{1} << succ.size()); ++mask) {
      std::vector<Fluent> added;
      for (std::size_t i = 0; i < succ.size(); ++i) {
        if (mask & (std::size_t{1} << i)) added.push_back(Fluent::cf(b, succ[i], p));
      }
      emit(Action::complete(b), {consumed}, added);
    }
  }

  std::vector<Fluent> arrived(const ElementId& m, const ElementId& p) {
    std::vector<Fluent> out;
    for (const auto& x : schema_.predecessors(m, p)) {
      Fluent f = Fluent::cf(x, m, p);
      if (s_.contains(f)) out.push_back(std::move(f));
    }
    return out;
  }

  // Elements holding a token or executing in p, other than m itself.
  std::vector<ElementId> waiting(const ElementId& m, const ElementId& p) {
    std::vector<ElementId> out;
    for (const auto& f : s_.fluents()) {
      if (f.kind == FluentKind::kCf && f.args[2] == p && f.args[1] != m && f.args[1] != kEndToken) {
        out.push_back(f.args[1]);
      } else if (f.kind == FluentKind::kEn && f.args[1] == p) {
        out.push_back(f.args[0]);
      }
    }
    return out;
  }

  bool exists_upstream(const ElementId& m, const ElementId& p, const std::vector<Fluent>& done) {
    std::vector<ElementId> units = waiting(m, p);
    for (const auto& x : schema_.predecessors(m, p)) {
      if (s_.contains(Fluent::cf(x, m, p))) continue;
      for (const auto& u : units) {
        if (!ctx_.reaches(u, x, m, p)) continue;
        bool path_to_done = std::any_of(done.begin(), done.end(), [&](const Fluent& k) {
          return ctx_.reaches(u, k.args[0], m, p);
        });
        if (!path_to_done) return true;
      }
    }
    return false;
  }

  void inclusive_merge(const ElementId& m, const ElementId& p) {
    std::vector<Fluent> done = arrived(m, p);
    if (done.empty() || exists_upstream(m, p, done)) return;
    for (const auto& y : schema_.successors(m, p)) emit(Action::complete(m), done, {Fluent::cf(m, y, p)});
  }

  void parallel_merge(const ElementId& m, const ElementId& p) {
    std::vector<Fluent> done = arrived(m, p);
    if (done.size() != schema_.predecessors(m, p).size()) return;
    for (const auto& y : schema_.successors(m, p)) emit(Action::complete(m), done, {Fluent::cf(m, y, p)});
  }

  void executing(const ElementId& a, const ElementId& p) {
    for (auto& c : completions_of(a, p)) out_.push_back({Action::complete(a), std::move(c.target)});
    for (const auto* x : schema_.exceptions_of(a)) {  // E4
      if (x->process != p || !schema_.has_kind(x->event, ElementKind::kIntermediateEvent)) continue;
      for (const auto& y : schema_.successors(x->event, p)) {
        emit(Action::complete(x->event), {Fluent::en(a, p)}, {Fluent::cf(x->event, y, p)});
      }
    }
  }

  const State& s_;
  const EnactmentContext& ctx_;
  const ProcessSchema& schema_;
  const AnnotationSet& ann_;
  std::vector<Transition> out_;
};

}  // namespace

std::shared_ptr<const Derivation> derived_closure(const State& state, const EnactmentContext& ctx) {
  return ctx.closure(state);
}

bool holds(const Fluent& f, const State& state, const EnactmentContext& ctx) {
  if (f.kind == FluentKind::kTf) return ctx.closure(state)->contains(f.args);
  return state.contains(f);
}

bool holds(const FluentExpr& e, const State& state, const EnactmentContext& ctx) {
  return !Solver(state, ctx, false).solve(e, {}).empty();
}

std::vector<Substitution> match(const FluentExpr& e, const State& state, const EnactmentContext& ctx,
                                const Substitution& initial) {
  auto out = Solver(state, ctx, true).solve(e, initial);
  normalize(out);
  return out;
}

State initial_state(const ElementId& process, const EnactmentContext& ctx) {
  const ProcessRecord* p = ctx.schema().top_level(process);
  if (!p) throw InputError("'" + process + "' is not a top-level process");
  return State({Fluent::cf(kStartToken, p->start, p->id)});
}

std::vector<Transition> successors(const State& state, const EnactmentContext& ctx) {
  return Rules(state, ctx).run();
}

std::vector<Completion> completions(const State& state, const ElementId& activity,
                                    const EnactmentContext& ctx) {
  std::vector<Completion> out;
  for (const auto& f : state.fluents()) {
    if (f.kind == FluentKind::kEn && f.args[0] == activity) {
      auto more = Rules(state, ctx).completions_of(activity, f.args[1]);
      out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    }
  }
  return out;
}

}  // namespace bpkb

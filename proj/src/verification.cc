#include <algorithm>
#include <deque>

#include "bpkb/error.h"
#include "bpkb/services.h"

namespace bpkb {
namespace {

Verdict failing_path(std::string property, bool holds, Analysis& a, const std::vector<bool>& target) {
  Verdict v{std::move(property), holds, std::nullopt, {}};
  v.witness = shortest_path(a.graph(), a.graph().initial, target);
  return v;
}

bool is_ef(const Formula& f) { return f.kind == Formula::Kind::kEU && f.operands[0].kind == Formula::Kind::kTrue; }

}  // namespace

std::optional<Witness> shortest_path(const KripkeGraph& graph, std::size_t from, const std::vector<bool>& target) {
  const std::size_t none = graph.size();
  std::vector<std::size_t> parent_edge(graph.size(), none);
  std::vector<bool> seen(graph.size(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  std::optional<std::size_t> hit;
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    if (target[i]) {
      hit = i;
      break;
    }
    for (std::size_t k : graph.out_edges(i)) {
      std::size_t j = graph.edges[k].to;
      if (seen[j]) continue;
      seen[j] = true;
      parent_edge[j] = k;
      queue.push_back(j);
    }
  }
  if (!hit) return std::nullopt;
  Witness w;
  for (std::size_t i = *hit; i != from; i = graph.edges[parent_edge[i]].from) {
    w.states.push_back(i);
    w.actions.push_back(graph.edges[parent_edge[i]].action);
  }
  w.states.push_back(from);
  std::reverse(w.states.begin(), w.states.end());
  std::reverse(w.actions.begin(), w.actions.end());
  return w;
}

Analysis::Analysis(ElementId process, const EnactmentContext& ctx, std::size_t budget)
    : process_(std::move(process)), ctx_(ctx), graph_(state_space(process_, ctx, budget)) {
  checker_ = std::make_unique<ModelChecker>(graph_, ctx_);
}

Verdict option_to_complete(Analysis& a) {
  Formula can_finish = Formula::ef(Formula::final_of(Term::constant(a.process())));
  bool holds = a.checker().eval(Formula::ag(can_finish), a.graph().initial);
  if (holds) return {"option_to_complete", true, std::nullopt, {}};
  std::vector<bool> stuck = a.checker().states_satisfying(can_finish);
  stuck.flip();
  return failing_path("option_to_complete", false, a, stuck);
}

Verdict inconsistency(Analysis& a) {
  bool holds = a.checker().eval(Formula::ef(Formula::falsity()), a.graph().initial);
  if (!holds) return {"inconsistency", false, std::nullopt, {}};
  return failing_path("inconsistency", true, a, a.checker().states_satisfying(Formula::falsity()));
}

std::vector<ElementId> non_executable_activities(Analysis& a) {
  const ProcessSchema& schema = a.context().schema();
  std::vector<ElementId> out;
  for (const auto& q : schema.process_closure(a.process())) {
    for (const auto& act : schema.elements_of(q)) {
      if (!schema.is_activity(act)) continue;
      Formula waiting = Formula::fluent({FluentKind::kCf, {Term::variable("X"), Term::constant(act), Term::constant(q)}});
      Formula starts = Formula::fluent({FluentKind::kEn, {Term::constant(act), Term::constant(q), Term{}}});
      Formula f = Formula::ef(Formula::conjunction(waiting, Formula::negation(Formula::ex(starts))));
      if (!a.checker().eval_open(f, a.graph().initial).empty()) out.push_back(act);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Verdict compliance(Analysis& a, const Formula& noncompliance) {
  Formula f = is_ef(noncompliance) ? noncompliance : Formula::ef(noncompliance);
  Verdict v{"compliance", true, std::nullopt, a.checker().eval_open(f, a.graph().initial)};
  if (v.bindings.empty()) return v;
  v.holds = false;
  Formula reached = bpkb::apply(v.bindings.front(), f.operands[1]);
  v.witness = shortest_path(a.graph(), a.graph().initial, a.checker().states_satisfying(reached));
  return v;
}

}  // namespace bpkb

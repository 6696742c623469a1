#include "bpkb/enactment.h"

namespace bpkb {

ConsistencyReport consistency_check(const KripkeGraph& graph, const EnactmentContext& ctx) {
  ConsistencyReport report;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (ctx.closure(graph.states[i])->inconsistent) {
      report.violations.push_back({ConsistencyViolation::Kind::kInconsistentState, i, std::nullopt,
                                   std::nullopt, "state " + std::to_string(i) + " is inconsistent"});
    }
  }
  for (std::size_t k = 0; k < graph.edges.size(); ++k) {
    const Edge& e = graph.edges[k];
    if (e.action.kind != ActionKind::kComplete) continue;
    const State& target = graph.states[e.to];
    for (const auto& c : completions(graph.states[e.from], e.action.element, ctx)) {
      if (c.target != target) continue;
      for (const auto& f : c.negative) {
        if (!holds(f, target, ctx)) continue;
        report.violations.push_back(
            {ConsistencyViolation::Kind::kNegativeEffectHolds, e.to, k, f,
             "after " + to_string(e.action) + " (state " + std::to_string(e.from) + " -> " +
                 std::to_string(e.to) + ") " + to_string(f) + " still holds"});
      }
    }
  }
  return report;
}

}  // namespace bpkb

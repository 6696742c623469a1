#include <algorithm>
#include <deque>
#include <sstream>

#include "bpkb/enactment.h"
#include "bpkb/error.h"

namespace bpkb {

std::vector<std::size_t> KripkeGraph::sinks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (is_sink(i)) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> KripkeGraph::index_of(const State& s) const {
  auto it = lookup_.find(s);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

void KripkeGraph::index() {
  out_.assign(size(), {});
  succ_.assign(size(), {});
  pred_.assign(size(), {});
  lookup_.clear();
  for (std::size_t i = 0; i < size(); ++i) lookup_.emplace(states[i], i);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (e.from >= size() || e.to >= size()) throw Error("edge refers to a missing state");
    out_[e.from].push_back(k);
    succ_[e.from].push_back(e.to);
    pred_[e.to].push_back(e.from);
  }
  for (auto* adj : {&succ_, &pred_}) {
    for (auto& v : *adj) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }
}

std::string KripkeGraph::to_text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < size(); ++i) out << "state " << i << ": " << to_string(states[i]) << "\n";
  for (const auto& e : edges) out << "edge " << e.from << " " << to_string(e.action) << " " << e.to << "\n";
  for (std::size_t i : sinks()) out << "sink " << i << "\n";
  return out.str();
}

KripkeGraph state_space(const ElementId& process, const EnactmentContext& ctx, std::size_t budget) {
  KripkeGraph g;
  g.process = process;
  std::unordered_map<State, std::size_t, StateHash> seen;
  std::deque<std::size_t> queue;
  auto intern = [&](State s) {
    auto [it, inserted] = seen.emplace(s, g.states.size());
    if (inserted) {
      if (g.states.size() >= budget) throw BudgetExceeded(budget);
      g.states.push_back(std::move(s));
      queue.push_back(it->second);
    }
    return it->second;
  };
  g.initial = intern(initial_state(process, ctx));
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (auto& t : successors(g.states[i], ctx)) {
      std::size_t j = intern(std::move(t.target));
      g.edges.push_back({i, std::move(t.action), j});
    }
  }
  g.index();
  return g;
}

}  // namespace bpkb

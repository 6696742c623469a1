#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "bpkb/ctl.h"
#include "bpkb/error.h"

namespace bpkb {
namespace {

using Bits = std::vector<bool>;

// Partial substitutions are joined on shared variables.
std::vector<Substitution> join(const std::vector<Substitution>& left, const std::vector<Substitution>& right) {
  std::vector<Substitution> out;
  for (const auto& a : left) {
    for (const auto& b : right) {
      Substitution merged = a;
      bool ok = true;
      for (const auto& [var, value] : b) {
        auto [it, inserted] = merged.emplace(var, value);
        if (!inserted && it->second != value) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(std::move(merged));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ModelChecker::ModelChecker(const KripkeGraph& graph, const EnactmentContext& ctx) : graph_(graph), ctx_(ctx) {}

std::size_t ModelChecker::memo_size() const {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  return memo_.size();
}

bool ModelChecker::eval(const Formula& f, std::size_t state) {
  if (state >= graph_.size()) throw InputError("state " + std::to_string(state) + " is not in the graph");
  return sat(f)[state];
}

std::vector<bool> ModelChecker::states_satisfying(const Formula& f) { return sat(f); }

const ModelChecker::Bits& ModelChecker::sat(const Formula& f) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  std::string key = to_string(f);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Bits bits = compute(f);
  return memo_.emplace(std::move(key), std::move(bits)).first->second;
}

ModelChecker::Bits ModelChecker::elementary(const Formula& f) {
  const std::size_t n = graph_.size();
  Bits out(n, false);
  if (f.kind == Formula::Kind::kFinal) {
    if (f.process.is_variable()) throw InputError("final(" + to_string(f.process) + ") is not ground");
    const ProcessRecord* p = ctx_.schema().process(f.process.name);
    if (!p) return out;
    Fluent done = Fluent::cf(p->end, kEndToken, p->id);
    for (std::size_t i = 0; i < n; ++i) out[i] = graph_.states[i].contains(done);
    return out;
  }
  if (!f.atom.is_ground()) throw InputError("atom " + to_string(f.atom) + " is not ground");
  Fluent g = f.atom.ground();
  for (std::size_t i = 0; i < n; ++i) out[i] = holds(g, graph_.states[i], ctx_);
  return out;
}

ModelChecker::Bits ModelChecker::compute(const Formula& f) {
  using K = Formula::Kind;
  const std::size_t n = graph_.size();
  switch (f.kind) {
    case K::kTrue:
      return Bits(n, true);
    case K::kFalse: {
      Bits out(n, false);
      for (std::size_t i = 0; i < n; ++i) out[i] = ctx_.closure(graph_.states[i])->inconsistent;
      return out;
    }
    case K::kAtom:
    case K::kFinal:
      return elementary(f);
    case K::kNot: {
      Bits out = sat(f.operands[0]);
      out.flip();
      return out;
    }
    case K::kAnd: {
      Bits out = sat(f.operands[0]);
      const Bits& b = sat(f.operands[1]);
      for (std::size_t i = 0; i < n; ++i) out[i] = out[i] && b[i];
      return out;
    }
    case K::kEX: {
      const Bits& inner = sat(f.operands[0]);
      Bits out(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& succ = graph_.successors(i);
        out[i] = std::any_of(succ.begin(), succ.end(), [&](std::size_t j) { return inner[j]; });
      }
      return out;
    }
    case K::kEU: {
      const Bits hold = sat(f.operands[0]);
      Bits out = sat(f.operands[1]);
      std::deque<std::size_t> queue;
      for (std::size_t i = 0; i < n; ++i) {
        if (out[i]) queue.push_back(i);
      }
      while (!queue.empty()) {
        std::size_t j = queue.front();
        queue.pop_front();
        for (std::size_t i : graph_.predecessors(j)) {
          if (!out[i] && hold[i]) {
            out[i] = true;
            queue.push_back(i);
          }
        }
      }
      return out;
    }
    case K::kEG: {
      // Greatest Z ⊆ F with every state of Z a sink or having a successor in Z.
      Bits z = sat(f.operands[0]);
      std::vector<std::size_t> live(n, 0);
      std::deque<std::size_t> dropped;
      for (std::size_t i = 0; i < n; ++i) {
        if (!z[i]) continue;
        for (std::size_t j : graph_.successors(i)) live[i] += z[j] ? 1 : 0;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (z[i] && !graph_.is_sink(i) && live[i] == 0) {
          z[i] = false;
          dropped.push_back(i);
        }
      }
      while (!dropped.empty()) {
        std::size_t j = dropped.front();
        dropped.pop_front();
        for (std::size_t i : graph_.predecessors(j)) {
          if (z[i] && --live[i] == 0) {
            z[i] = false;
            dropped.push_back(i);
          }
        }
      }
      return z;
    }
  }
  return Bits(n, false);
}

std::vector<Substitution> ModelChecker::eval_open(const Formula& f, std::size_t state,
                                                  const Substitution& initial) {
  if (state >= graph_.size()) throw InputError("state " + std::to_string(state) + " is not in the graph");
  Formula g = bpkb::apply(initial, f);
  if (is_ground(g)) {
    if (eval(g, state)) return {initial};
    return {};
  }
  NFReport report = validate_nf(g);
  if (!report.accepted()) throw QueryRejected(report.to_string());

  std::vector<std::size_t> reachable{state};
  std::vector<bool> seen(graph_.size(), false);
  seen[state] = true;
  for (std::size_t k = 0; k < reachable.size(); ++k) {
    for (std::size_t j : graph_.successors(reachable[k])) {
      if (!seen[j]) {
        seen[j] = true;
        reachable.push_back(j);
      }
    }
  }

  std::vector<Substitution> candidates{Substitution{}};
  for (const Formula* atom : grounding_atoms(g)) {
    if (is_ground(*atom)) continue;
    std::set<Substitution> matches;
    if (atom->kind == Formula::Kind::kFinal) {
      for (const auto& p : ctx_.schema().processes()) {
        Fluent done = Fluent::cf(p.end, kEndToken, p.id);
        for (std::size_t i : reachable) {
          if (graph_.states[i].contains(done)) {
            matches.insert(Substitution{{atom->process.name, p.id}});
            break;
          }
        }
      }
    } else {
      const FluentPattern& p = atom->atom;
      for (std::size_t i : reachable) {
        if (p.kind == FluentKind::kTf) {
          for (const auto& t : ctx_.closure(graph_.states[i])->facts) {
            Substitution theta;
            if (unify(p, Fluent::tf(t[0], t[1], t[2]), theta)) matches.insert(std::move(theta));
          }
        } else {
          for (const auto& fl : graph_.states[i].fluents()) {
            Substitution theta;
            if (fl.kind == p.kind && unify(p, fl, theta)) matches.insert(std::move(theta));
          }
        }
      }
    }
    candidates = join(candidates, std::vector<Substitution>(matches.begin(), matches.end()));
    if (candidates.empty()) return {};
  }

  std::vector<Substitution> out;
  for (const auto& theta : candidates) {
    if (eval(bpkb::apply(theta, g), state)) {
      Substitution full = initial;
      full.insert(theta.begin(), theta.end());
      out.push_back(std::move(full));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace bpkb

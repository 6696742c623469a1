#include "bpkb/context.h"

#include <functional>

namespace bpkb {
namespace {

void add_constants(const FluentPattern& p, std::set<std::string>& out) {
  for (std::size_t i = 0; i < fluent_arity(p.kind); ++i) {
    if (p.args[i].is_constant()) out.insert(p.args[i].name);
  }
}

void add_constants(const FluentExpr& e, std::set<std::string>& out) {
  if (e.kind == FluentExpr::Kind::kAtom) add_constants(e.atom, out);
  for (const auto& op : e.operands) add_constants(op, out);
}

}  // namespace

EnactmentContext::EnactmentContext(ProcessSchema schema, TripleStore store, AnnotationSet annotations)
    : schema_(std::move(schema)), store_(std::move(store)), annotations_(std::move(annotations)) {
  store_.close();
  std::set<std::string> all = store_.constants();
  all.insert(kStartToken);
  all.insert(kEndToken);
  for (const auto& [id, kinds] : schema_.classification()) all.insert(id);
  for (const auto& p : schema_.processes()) all.insert(p.id);
  for (const auto& p : annotations_.preconditions) add_constants(p.condition, all);
  for (const auto& g : annotations_.guards) add_constants(g.guard, all);
  for (const auto& e : annotations_.effects) {
    add_constants(e.qualifier, all);
    for (const auto& f : e.negative) add_constants(f, all);
    for (const auto& f : e.positive) add_constants(f, all);
  }
  constants_.assign(all.begin(), all.end());
}

std::size_t EnactmentContext::FactsHash::operator()(const std::vector<TripleFact>& v) const {
  std::size_t h = v.size();
  std::hash<std::string> hs;
  for (const auto& f : v) {
    for (const auto& s : f) h = h * 1000003u ^ hs(s);
  }
  return h;
}

std::shared_ptr<const Derivation> EnactmentContext::closure(const State& state) const {
  std::vector<TripleFact> key = state.tf_triples();
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  auto d = std::make_shared<const Derivation>(derive(key, store_));
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.emplace(std::move(key), std::move(d)).first->second;
}

std::size_t EnactmentContext::memo_size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.size();
}

bool EnactmentContext::reaches(const ElementId& u, const ElementId& x, const ElementId& avoid,
                               const ElementId& process) const {
  if (u == x) return true;
  std::array<std::string, 4> key{u, x, avoid, process};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = reach_memo_.find(key);
    if (it != reach_memo_.end()) return it->second;
  }
  bool r = n_reachable(u, x, avoid, process, schema_);
  std::lock_guard<std::mutex> lock(mutex_);
  reach_memo_.emplace(key, r);
  return r;
}

}  // namespace bpkb

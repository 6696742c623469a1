#include <deque>
#include <map>

#include "bpkb/context.h"

namespace bpkb {
namespace {

class Deriver {
 public:
  explicit Deriver(const TripleStore& tbox) : tbox_(tbox), type_(vocab::kType) {}

  Derivation run(const std::vector<TripleFact>& asserted) {
    for (const auto& f : asserted) add(f);
    while (!queue_.empty()) {
      TripleFact f = std::move(queue_.front());
      queue_.pop_front();
      fire(f);
    }
    return std::move(out_);
  }

 private:
  void add(const TripleFact& f) {
    if (!out_.facts.insert(f).second) return;
    by_sp_[{f[0], f[1]}].insert(f[2]);
    by_op_[{f[2], f[1]}].insert(f[0]);
    queue_.push_back(f);
  }

  bool has(const std::string& s, const std::string& p, const std::string& o) const {
    return out_.facts.count({s, p, o}) > 0;
  }

  // Copies because add() may grow the indexed set while we iterate.
  std::vector<std::string> objects(const std::string& s, const std::string& p) const {
    auto it = by_sp_.find({s, p});
    if (it == by_sp_.end()) return {};
    return {it->second.begin(), it->second.end()};
  }
  std::vector<std::string> subjects(const std::string& o, const std::string& p) const {
    auto it = by_op_.find({o, p});
    if (it == by_op_.end()) return {};
    return {it->second.begin(), it->second.end()};
  }

  void fire(const TripleFact& f) {
    const std::string& s = f[0];
    const std::string& p = f[1];
    const std::string& o = f[2];
    if (p == type_) {
      for (const auto& d : tbox_.superclasses(o)) add({s, type_, d});
      for (const auto& x : tbox_.intersections_using(o)) {
        const std::string& other = x.left == o ? x.right : x.left;
        if (has(s, type_, other)) add({s, type_, x.cls});
      }
      // s is a filler individual: whoever points to s through the property
      // gets the existential class.
      for (const auto& e : tbox_.existentials_with_filler(o)) {
        for (const auto& x : subjects(s, e.property)) add({x, type_, e.cls});
      }
      for (const auto& d : tbox_.disjoint_with(o)) {
        if (has(s, type_, d)) out_.inconsistent = true;
      }
      return;
    }
    for (const auto& q : tbox_.superproperties(p)) add({s, q, o});
    for (const auto& c : tbox_.domains(p)) add({s, type_, c});
    for (const auto& c : tbox_.ranges(p)) add({o, type_, c});
    for (const auto& q : tbox_.inverses(p)) add({o, q, s});
    if (tbox_.is_transitive(p)) {
      for (const auto& z : objects(o, p)) add({s, p, z});
      for (const auto& w : subjects(s, p)) add({w, p, o});
    }
    for (const auto& e : tbox_.existentials_on(p)) {
      if (e.filler == vocab::kThing || has(o, type_, e.filler)) add({s, type_, e.cls});
    }
  }

  const TripleStore& tbox_;
  const std::string type_;
  Derivation out_;
  std::deque<TripleFact> queue_;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> by_sp_;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> by_op_;
};

}  // namespace

Derivation derive(const std::vector<TripleFact>& asserted, const TripleStore& tbox) {
  return Deriver(tbox).run(asserted);
}

}  // namespace bpkb

#include <algorithm>
#include <functional>

#include "bpkb/error.h"
#include "bpkb/ontology.h"

namespace bpkb {
namespace {

const std::set<std::string>& empty_set() {
  static const std::set<std::string> kEmpty;
  return kEmpty;
}

template <typename Map>
const auto& lookup(const Map& map, const std::string& key) {
  static const typename Map::mapped_type kEmpty{};
  auto it = map.find(key);
  return it == map.end() ? kEmpty : it->second;
}

bool is_blank(const std::string& name) { return name.rfind("_:", 0) == 0; }

}  // namespace

std::string canonical_term(std::string_view name) {
  static const std::map<std::string_view, std::string_view> kShort = {
      {"a", vocab::kType},
      {"type", vocab::kType},
      {"subClassOf", vocab::kSubClassOf},
      {"subPropertyOf", vocab::kSubPropertyOf},
      {"domain", vocab::kDomain},
      {"range", vocab::kRange},
      {"equivalentClass", vocab::kEquivalentClass},
      {"disjointWith", vocab::kDisjointWith},
      {"intersectionOf", vocab::kIntersectionOf},
      {"someValuesFrom", vocab::kSomeValuesFrom},
      {"onProperty", vocab::kOnProperty},
      {"inverseOf", vocab::kInverseOf},
      {"TransitiveProperty", vocab::kTransitiveProperty},
  };
  auto it = kShort.find(name);
  return std::string(it == kShort.end() ? name : it->second);
}

bool is_vocabulary_name(std::string_view name) {
  return name.rfind("rdf:", 0) == 0 || name.rfind("rdfs:", 0) == 0 || name.rfind("owl:", 0) == 0;
}

bool is_supported_vocabulary(std::string_view name) {
  static const std::set<std::string_view> kSupported = {
      vocab::kType,          vocab::kSubClassOf,     vocab::kSubPropertyOf,
      vocab::kDomain,        vocab::kRange,          vocab::kEquivalentClass,
      vocab::kDisjointWith,  vocab::kIntersectionOf, vocab::kSomeValuesFrom,
      vocab::kOnProperty,    vocab::kInverseOf,      vocab::kTransitiveProperty,
      vocab::kClass,         vocab::kObjectProperty, vocab::kThing,
      vocab::kNothing,       "rdf:Property",         "rdfs:Class",
      "owl:NamedIndividual", "rdfs:label",           "rdfs:comment",
  };
  return kSupported.count(name) > 0;
}

const std::string& Triple::object_name() const {
  if (const auto* s = std::get_if<std::string>(&object)) return *s;
  throw Error("triple object is a list: " + to_string(*this));
}

std::string to_string(const Triple& t) {
  std::string out = t.subject + " " + t.predicate + " ";
  if (const auto* list = std::get_if<TermList>(&t.object)) {
    out += "(";
    for (const auto& x : *list) out += " " + x;
    out += " )";
  } else {
    out += std::get<std::string>(t.object);
  }
  return out + " .";
}

void TripleStore::add(Triple t) {
  if (t.predicate == vocab::kEquivalentClass && !t.has_list_object()) {
    asserted_.insert(Triple(t.subject, std::string(vocab::kSubClassOf), t.object));
    asserted_.insert(Triple(t.object_name(), std::string(vocab::kSubClassOf), t.subject));
  }
  asserted_.insert(std::move(t));
  closed_ = false;
}

const std::set<Triple>& TripleStore::derived() const {
  if (!closed_) throw Error("triple store is not closed");
  return derived_;
}

std::string TripleStore::fresh_name(std::string_view hint) {
  return "_:" + std::string(hint) + std::to_string(++fresh_counter_);
}

void TripleStore::close() {
  if (closed_) return;
  derived_ = asserted_;
  const std::string sub(vocab::kSubClassOf);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Triple> fresh;

    std::map<std::string, std::set<std::string>> up;
    for (const auto& t : derived_) {
      if (t.predicate == vocab::kIntersectionOf && t.has_list_object()) {
        for (const auto& d : std::get<TermList>(t.object)) fresh.emplace_back(t.subject, sub, d);
      } else if (t.predicate == vocab::kSubClassOf && !t.has_list_object()) {
        up[t.subject].insert(t.object_name());
      }
    }

    // Existential subsumption: same property, subsumed fillers.
    std::vector<std::pair<const Triple*, const Triple*>> exists;
    std::multimap<std::string, const Triple*> on_property;
    for (const auto& t : derived_) {
      if (t.predicate == vocab::kOnProperty && !t.has_list_object()) {
        on_property.emplace(t.subject, &t);
      }
    }
    for (const auto& t : derived_) {
      if (t.predicate != vocab::kSomeValuesFrom || t.has_list_object()) continue;
      auto [lo, hi] = on_property.equal_range(t.subject);
      for (auto it = lo; it != hi; ++it) exists.emplace_back(&t, it->second);
    }
    for (const auto& [s1, p1] : exists) {
      for (const auto& [s2, p2] : exists) {
        if (p1->object_name() != p2->object_name()) continue;
        auto it = up.find(s1->object_name());
        if (it != up.end() && it->second.count(s2->object_name())) {
          fresh.emplace_back(s1->subject, sub, s2->subject);
        }
      }
    }

    // Transitive subsumption.
    for (const auto& [c, direct] : up) {
      std::set<std::string> seen;
      std::vector<std::string> work(direct.begin(), direct.end());
      while (!work.empty()) {
        std::string d = std::move(work.back());
        work.pop_back();
        if (!seen.insert(d).second) continue;
        if (auto it = up.find(d); it != up.end()) work.insert(work.end(), it->second.begin(), it->second.end());
      }
      for (const auto& d : seen) fresh.emplace_back(c, sub, d);
    }

    for (auto& t : fresh) {
      if (derived_.insert(std::move(t)).second) changed = true;
    }
  }
  closed_ = true;
  build_indexes();
}

void TripleStore::build_indexes() {
  super_.clear();
  superprop_.clear();
  domain_.clear();
  range_.clear();
  inverse_.clear();
  disjoint_.clear();
  transitive_.clear();
  intersections_.clear();
  by_filler_.clear();
  by_property_.clear();
  std::map<std::string, std::vector<std::string>> svf, onp;
  for (const auto& t : derived_) {
    if (t.has_list_object()) {
      const auto& list = std::get<TermList>(t.object);
      if (t.predicate == vocab::kIntersectionOf && list.size() == 2) {
        Intersection x{t.subject, list[0], list[1]};
        intersections_[list[0]].push_back(x);
        if (list[1] != list[0]) intersections_[list[1]].push_back(x);
      }
      continue;
    }
    const std::string& o = t.object_name();
    if (t.predicate == vocab::kSubClassOf) {
      super_[t.subject].insert(o);
    } else if (t.predicate == vocab::kSubPropertyOf) {
      superprop_[t.subject].insert(o);
    } else if (t.predicate == vocab::kDomain) {
      domain_[t.subject].insert(o);
    } else if (t.predicate == vocab::kRange) {
      range_[t.subject].insert(o);
    } else if (t.predicate == vocab::kInverseOf) {
      inverse_[t.subject].insert(o);
      inverse_[o].insert(t.subject);
    } else if (t.predicate == vocab::kDisjointWith) {
      disjoint_[t.subject].insert(o);
      disjoint_[o].insert(t.subject);
    } else if (t.predicate == vocab::kType && o == vocab::kTransitiveProperty) {
      transitive_.insert(t.subject);
    } else if (t.predicate == vocab::kSomeValuesFrom) {
      svf[t.subject].push_back(o);
    } else if (t.predicate == vocab::kOnProperty) {
      onp[t.subject].push_back(o);
    }
  }
  for (const auto& [cls, fillers] : svf) {
    auto it = onp.find(cls);
    if (it == onp.end()) continue;
    for (const auto& f : fillers) {
      for (const auto& p : it->second) {
        Existential e{cls, p, f};
        by_filler_[f].push_back(e);
        by_property_[p].push_back(e);
      }
    }
  }
}

const std::set<std::string>& TripleStore::superclasses(const std::string& cls) const {
  auto it = super_.find(cls);
  return it == super_.end() ? empty_set() : it->second;
}
const std::set<std::string>& TripleStore::superproperties(const std::string& p) const {
  auto it = superprop_.find(p);
  return it == superprop_.end() ? empty_set() : it->second;
}
const std::set<std::string>& TripleStore::domains(const std::string& p) const {
  auto it = domain_.find(p);
  return it == domain_.end() ? empty_set() : it->second;
}
const std::set<std::string>& TripleStore::ranges(const std::string& p) const {
  auto it = range_.find(p);
  return it == range_.end() ? empty_set() : it->second;
}
const std::set<std::string>& TripleStore::inverses(const std::string& p) const {
  auto it = inverse_.find(p);
  return it == inverse_.end() ? empty_set() : it->second;
}
const std::set<std::string>& TripleStore::disjoint_with(const std::string& cls) const {
  auto it = disjoint_.find(cls);
  return it == disjoint_.end() ? empty_set() : it->second;
}
bool TripleStore::is_transitive(const std::string& p) const { return transitive_.count(p) > 0; }

const std::vector<TripleStore::Intersection>& TripleStore::intersections_using(
    const std::string& cls) const {
  return lookup(intersections_, cls);
}
const std::vector<TripleStore::Existential>& TripleStore::existentials_with_filler(
    const std::string& cls) const {
  return lookup(by_filler_, cls);
}
const std::vector<TripleStore::Existential>& TripleStore::existentials_on(
    const std::string& p) const {
  return lookup(by_property_, p);
}

bool TripleStore::subsumed(const std::string& sub, const std::string& super) const {
  return superclasses(sub).count(super) > 0;
}

std::set<std::string> TripleStore::named_classes() const {
  static const std::set<std::string_view> kClassPredicates = {
      vocab::kSubClassOf, vocab::kEquivalentClass, vocab::kDisjointWith};
  std::set<std::string> out;
  auto keep = [&](const std::string& n) {
    if (!is_blank(n) && !is_vocabulary_name(n)) out.insert(n);
  };
  for (const auto& t : asserted_) {
    if (t.has_list_object()) {
      if (t.predicate == vocab::kIntersectionOf) {
        for (const auto& x : std::get<TermList>(t.object)) keep(x);
      }
      continue;
    }
    const std::string& o = t.object_name();
    if (kClassPredicates.count(t.predicate)) {
      keep(t.subject);
      keep(o);
    } else if (t.predicate == vocab::kType && (o == vocab::kClass || o == "rdfs:Class")) {
      keep(t.subject);
    } else if (t.predicate == vocab::kSomeValuesFrom || t.predicate == vocab::kDomain ||
               t.predicate == vocab::kRange) {
      keep(o);
    }
  }
  return out;
}

std::set<std::string> TripleStore::constants() const {
  std::set<std::string> out;
  auto keep = [&](const std::string& n) {
    if (!is_blank(n) && !is_vocabulary_name(n)) out.insert(n);
  };
  for (const auto& t : asserted_) {
    keep(t.subject);
    keep(t.predicate);
    if (t.has_list_object()) {
      for (const auto& x : std::get<TermList>(t.object)) keep(x);
    } else {
      keep(t.object_name());
    }
  }
  return out;
}

TripleStore tbox_closure(const TripleStore& store) {
  TripleStore copy = store;
  copy.close();
  return copy;
}

bool entails(const TripleStore& store, const Triple& q) { return store.derived().count(q) > 0; }

}  // namespace bpkb

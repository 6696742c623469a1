#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace bpkb {

namespace vocab {
inline constexpr std::string_view kType = "rdf:type";
inline constexpr std::string_view kSubClassOf = "rdfs:subClassOf";
inline constexpr std::string_view kSubPropertyOf = "rdfs:subPropertyOf";
inline constexpr std::string_view kDomain = "rdfs:domain";
inline constexpr std::string_view kRange = "rdfs:range";
inline constexpr std::string_view kEquivalentClass = "owl:equivalentClass";
inline constexpr std::string_view kDisjointWith = "owl:disjointWith";
inline constexpr std::string_view kIntersectionOf = "owl:intersectionOf";
inline constexpr std::string_view kSomeValuesFrom = "owl:someValuesFrom";
inline constexpr std::string_view kOnProperty = "owl:onProperty";
inline constexpr std::string_view kInverseOf = "owl:inverseOf";
inline constexpr std::string_view kTransitiveProperty = "owl:TransitiveProperty";
inline constexpr std::string_view kClass = "owl:Class";
inline constexpr std::string_view kObjectProperty = "owl:ObjectProperty";
inline constexpr std::string_view kThing = "owl:Thing";
inline constexpr std::string_view kNothing = "owl:Nothing";
}  // namespace vocab

// Maps unprefixed shorthands (`type`, `a`, `subClassOf`, ...) to the
// prefixed vocabulary term; other names are returned unchanged.
std::string canonical_term(std::string_view name);

// True for names in the rdf:, rdfs: or owl: namespaces.
bool is_vocabulary_name(std::string_view name);
// True if the vocabulary name is one the reasoner understands.
bool is_supported_vocabulary(std::string_view name);

using TermList = std::vector<std::string>;
using TripleObject = std::variant<std::string, TermList>;

struct Triple {
  std::string subject;
  std::string predicate;
  TripleObject object;

  Triple() = default;
  Triple(std::string s, std::string p, TripleObject o)
      : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {}

  const std::string& object_name() const;  // throws if the object is a list
  bool has_list_object() const { return std::holds_alternative<TermList>(object); }
  auto operator<=>(const Triple&) const = default;
};

std::string to_string(const Triple& t);

// Asserted TBox triples plus the closure under the schema-level rules
// (transitive subsumption, existential subsumption, intersection).
class TripleStore {
 public:
  // Adds an asserted triple. equivalentClass is also expanded into two
  // subClassOf triples. Invalidates the closure.
  void add(Triple t);
  const std::set<Triple>& asserted() const { return asserted_; }

  // Computes the closure if it is stale. Idempotent.
  void close();
  bool closed() const { return closed_; }
  // Requires close().
  const std::set<Triple>& derived() const;

  // Name for an anonymous class or property, `_:<hint><n>`.
  std::string fresh_name(std::string_view hint);
  // Fresh names are shared between structurally equal expressions.
  std::map<std::string, std::string>& expression_names() { return expression_names_; }

  // Prefix used for bare names in DL-shorthand input (`@default bro`).
  std::string& default_prefix() { return default_prefix_; }
  const std::string& default_prefix() const { return default_prefix_; }

  std::map<std::string, std::string>& prefixes() { return prefixes_; }
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

  // Indexes over the closure, used by the state-level rules. All require
  // close().
  struct Existential {
    std::string cls;
    std::string property;
    std::string filler;
  };
  struct Intersection {
    std::string cls;
    std::string left;
    std::string right;
  };
  const std::set<std::string>& superclasses(const std::string& cls) const;
  const std::set<std::string>& superproperties(const std::string& property) const;
  const std::set<std::string>& domains(const std::string& property) const;
  const std::set<std::string>& ranges(const std::string& property) const;
  const std::set<std::string>& inverses(const std::string& property) const;
  const std::set<std::string>& disjoint_with(const std::string& cls) const;
  bool is_transitive(const std::string& property) const;
  const std::vector<Intersection>& intersections_using(const std::string& cls) const;
  const std::vector<Existential>& existentials_with_filler(const std::string& cls) const;
  const std::vector<Existential>& existentials_on(const std::string& property) const;

  // Named classes: subjects/objects of class axioms that are not blank
  // nodes.
  std::set<std::string> named_classes() const;
  // Non-vocabulary constants that occur in the store.
  std::set<std::string> constants() const;

  bool subsumed(const std::string& sub, const std::string& super) const;

 private:
  void build_indexes();

  std::set<Triple> asserted_;
  std::set<Triple> derived_;
  bool closed_ = true;
  std::size_t fresh_counter_ = 0;
  std::map<std::string, std::string> expression_names_;
  std::map<std::string, std::string> prefixes_;
  std::string default_prefix_;

  std::map<std::string, std::set<std::string>> super_;
  std::map<std::string, std::set<std::string>> superprop_;
  std::map<std::string, std::set<std::string>> domain_;
  std::map<std::string, std::set<std::string>> range_;
  std::map<std::string, std::set<std::string>> inverse_;
  std::map<std::string, std::set<std::string>> disjoint_;
  std::set<std::string> transitive_;
  std::map<std::string, std::vector<Intersection>> intersections_;
  std::map<std::string, std::vector<Existential>> by_filler_;
  std::map<std::string, std::vector<Existential>> by_property_;
};

enum class OntologySyntax { kAuto, kTriples, kDl };

// Loads `s p o .` triple lines (with `@prefix` declarations) or
// DL-shorthand axioms. kAuto picks DL syntax when the first axiom line does
// not end with " .". The result is closed.
TripleStore load_triples(std::string_view text, OntologySyntax syntax = OntologySyntax::kAuto);

// Adds more input to an existing store (for example several files) and
// recloses it.
void load_into(TripleStore& store, std::string_view text,
               OntologySyntax syntax = OntologySyntax::kAuto);

// Parses a DL-shorthand concept (`A and some r.B`), adds the defining
// triples for its complex parts and returns the name of the class that
// stands for it. Named concepts come back unchanged.
// Bare names get the store's default prefix. The store is left unclosed.
std::string add_concept(TripleStore& store, std::string_view expression);

// Returns a closed copy of `store`.
TripleStore tbox_closure(const TripleStore& store);

// q is in the closure of `store`. The store must be closed.
bool entails(const TripleStore& store, const Triple& q);

}  // namespace bpkb

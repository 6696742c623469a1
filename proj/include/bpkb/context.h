#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "bpkb/annotations.h"
#include "bpkb/fluent.h"
#include "bpkb/ontology.h"
#include "bpkb/process_model.h"

namespace bpkb {

using TripleFact = std::array<std::string, 3>;

// tf facts of one state closed under the state-level ontology rules.
struct Derivation {
  std::set<TripleFact> facts;
  // Set when a disjointness axiom fires; this is the `false` fluent.
  bool inconsistent = false;

  bool contains(const TripleFact& f) const { return facts.count(f) > 0; }
};

// Applies subclass, subproperty, domain, range, inverse, transitivity,
// intersection, existential and disjointness rules to a fixpoint.
Derivation derive(const std::vector<TripleFact>& asserted, const TripleStore& tbox);

// Everything enactment needs: schema, closed TBox, annotations and the
// constant universe. Immutable once built; the closure memo is internally
// synchronized.
class EnactmentContext {
 public:
  EnactmentContext(ProcessSchema schema, TripleStore store, AnnotationSet annotations);

  const ProcessSchema& schema() const { return schema_; }
  const TripleStore& store() const { return store_; }
  const AnnotationSet& annotations() const { return annotations_; }
  // Sorted constants from the schema, the annotations and the ontology.
  const std::vector<std::string>& constants() const { return constants_; }

  // Memoized on the state's tf fluents.
  std::shared_ptr<const Derivation> closure(const State& state) const;
  std::size_t memo_size() const;

  // U == X or a path U -> X in `process` avoiding `avoid`; memoized.
  bool reaches(const ElementId& u, const ElementId& x, const ElementId& avoid,
               const ElementId& process) const;

 private:
  struct FactsHash {
    std::size_t operator()(const std::vector<TripleFact>& v) const;
  };

  ProcessSchema schema_;
  TripleStore store_;
  AnnotationSet annotations_;
  std::vector<std::string> constants_;

  mutable std::mutex mutex_;
  mutable std::unordered_map<std::vector<TripleFact>, std::shared_ptr<const Derivation>, FactsHash>
      memo_;
  mutable std::map<std::array<std::string, 4>, bool> reach_memo_;
};

}  // namespace bpkb

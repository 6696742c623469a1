#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpkb/fluent_expr.h"
#include "bpkb/ontology.h"
#include "bpkb/process_model.h"

namespace bpkb {

// el : ∃termRef.Concept
struct TermAnnotation {
  ElementId element;
  std::string expression;  // as written
  std::string concept_name;  // named class standing for the expression
  bool operator==(const TermAnnotation&) const = default;
};

struct Precondition {
  ElementId element;
  FluentExpr condition;
  ElementId process;
  bool operator==(const Precondition&) const = default;
};

struct Effect {
  ElementId element;
  FluentExpr qualifier;
  std::vector<FluentPattern> negative;
  std::vector<FluentPattern> positive;
  ElementId process;
  bool operator==(const Effect&) const = default;
};

struct GuardedFlow {
  FluentExpr guard;
  ElementId branch;
  ElementId successor;
  ElementId process;
  bool operator==(const GuardedFlow&) const = default;
};

class AnnotationSet {
 public:
  std::vector<TermAnnotation> terms;
  std::vector<Precondition> preconditions;
  std::vector<Effect> effects;  // in file order; several per element are alternatives
  std::vector<GuardedFlow> guards;

  std::vector<const Precondition*> preconditions_of(const ElementId& element,
                                                    const ElementId& process) const;
  std::vector<const Effect*> effects_of(const ElementId& element, const ElementId& process) const;
  // A gateway is guarded when at least one of its outgoing flows is.
  bool is_guarded(const ElementId& branch, const ElementId& process) const;
  const FluentExpr* guard_of(const ElementId& branch, const ElementId& successor,
                             const ElementId& process) const;
  std::optional<std::string> concept_of(const ElementId& element) const;

  // Serializes to the `.ann` format.
  std::string to_text() const;
  bool empty() const {
    return terms.empty() && preconditions.empty() && effects.empty() && guards.empty();
  }
};

// Reads an `.ann` file. Adds the seq edges implied by c_seq records to
// `schema` and the classes standing for complex termRef concepts to `store`
// (which is reclosed). Throws ParseError on syntax errors and references to
// unknown elements or processes.
AnnotationSet parse_annotations(std::string_view text, ProcessSchema& schema, TripleStore& store);

ViolationReport validate_annotations(const AnnotationSet& set, const ProcessSchema& schema,
                                     const TripleStore& store);

}  // namespace bpkb

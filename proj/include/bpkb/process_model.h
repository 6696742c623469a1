#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bpkb/schema.h"

namespace bpkb {

// Reads a `.bps` fact file: one ground fact `pred(arg, ...)` per line, `%`
// comments. Throws ParseError on syntax errors, unknown predicates and arity
// mismatches.
ProcessSchema parse_process_facts(std::string_view text);

struct Violation {
  // "1".."6" for the structural constraints, "meta-model" or "reference"
  // for classification problems.
  std::string constraint;
  std::vector<ElementId> elements;
  std::string message;
  auto operator<=>(const Violation&) const = default;
};

// Sorted and free of duplicates, so equal schemas give equal reports no
// matter in which order their facts were read.
struct ViolationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ViolationReport well_formedness(const ProcessSchema& schema);

// Non-empty seq path from `from` to `to` within process `process`.
// Throws InputError for an unknown process.
bool seq_plus(const ElementId& from, const ElementId& to, const ElementId& process,
              const ProcessSchema& schema);

// A seq path from `from` to `to` in `process` whose nodes after `from` all
// differ from `avoid`.
bool n_reachable(const ElementId& from, const ElementId& to, const ElementId& avoid,
                 const ElementId& process, const ProcessSchema& schema);

}  // namespace bpkb

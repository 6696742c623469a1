#pragma once

#include <string_view>

#include "bpkb/schema.h"

namespace bpkb {

// Maps a BPMN 2.0 XML document onto process facts: tasks, sub-processes
// (comp_act), start/end/intermediate/boundary events, exclusive, inclusive
// and parallel gateways (branch or merge by their flow counts), sequence
// flows, data objects with their associations, and lanes. Namespace
// prefixes are ignored. Throws ParseError for malformed XML and InputError
// for elements outside this subset.
ProcessSchema import_bpmn_xml(std::string_view xml);

}  // namespace bpkb

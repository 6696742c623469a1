#include <map>

#include "bpkb/process_model.h"
#include "bpkb/text.h"

namespace bpkb {
namespace {

const std::map<std::string, ElementKind, std::less<>>& unary_kinds() {
  static const std::map<std::string, ElementKind, std::less<>> kKinds = {
      {"task", ElementKind::kTask},
      {"start_event", ElementKind::kStartEvent},
      {"int_event", ElementKind::kIntermediateEvent},
      {"end_event", ElementKind::kEndEvent},
      {"exc_branch", ElementKind::kExclusiveBranch},
      {"exc_merge", ElementKind::kExclusiveMerge},
      {"inc_branch", ElementKind::kInclusiveBranch},
      {"inc_merge", ElementKind::kInclusiveMerge},
      {"par_branch", ElementKind::kParallelBranch},
      {"par_merge", ElementKind::kParallelMerge},
      {"item", ElementKind::kItem},
      {"participant", ElementKind::kParticipant},
  };
  return kKinds;
}

std::size_t expected_arity(const std::string& pred) {
  if (unary_kinds().count(pred) || pred == "element" || pred == "activity" || pred == "event") {
    return 1;
  }
  if (pred == "bp" || pred == "comp_act" || pred == "seq" || pred == "exception" ||
      pred == "input" || pred == "output" || pred == "assigned") {
    return 3;
  }
  return 0;
}

void add_fact(ProcessSchema& schema, const std::string& pred, std::vector<std::string> a) {
  if (auto it = unary_kinds().find(pred); it != unary_kinds().end()) {
    schema.classify(a[0], it->second);
  } else if (pred == "element" || pred == "activity" || pred == "event") {
    schema.declare_abstract(a[0], pred);
  } else if (pred == "bp") {
    schema.add_process({a[0], a[1], a[2]});
  } else if (pred == "comp_act") {
    schema.add_compound({a[0], a[1], a[2]});
  } else if (pred == "seq") {
    schema.add_seq({a[0], a[1], a[2]});
  } else if (pred == "exception") {
    schema.add_exception({a[0], a[1], a[2]});
  } else if (pred == "input") {
    schema.add_input({a[0], a[1], a[2]});
  } else if (pred == "output") {
    schema.add_output({a[0], a[1], a[2]});
  } else {
    schema.add_assignment({a[0], a[1], a[2]});
  }
}

}  // namespace

ProcessSchema parse_process_facts(std::string_view text) {
  ProcessSchema schema;
  for (const auto& line : logical_lines(text)) {
    Scanner in(line.text, line.number, false);
    if (!in.at_identifier()) in.fail("expected a fact");
    std::size_t pred_column = in.column();
    std::string pred = in.identifier();
    std::size_t arity = expected_arity(pred);
    if (arity == 0) throw ParseError("unknown predicate '" + pred + "'", line.number, pred_column);
    in.expect('(');
    std::vector<std::string> args;
    do {
      in.skip_space();
      args.push_back(in.term(false, false).name);
      in.skip_space();
    } while (in.consume(','));
    in.expect(')');
    in.consume('.');
    if (!in.at_end()) in.fail("unexpected text after fact");
    if (args.size() != arity) {
      throw ParseError(pred + " expects " + std::to_string(arity) + " argument(s), got " +
                           std::to_string(args.size()),
                       line.number, pred_column);
    }
    add_fact(schema, pred, std::move(args));
  }
  return schema;
}

}  // namespace bpkb

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bpkb {

using ElementId = std::string;

enum class ElementKind {
  kTask,
  kCompoundActivity,
  kStartEvent,
  kIntermediateEvent,
  kEndEvent,
  kExclusiveBranch,
  kExclusiveMerge,
  kInclusiveBranch,
  kInclusiveMerge,
  kParallelBranch,
  kParallelMerge,
  kItem,
  kParticipant,
};

// Fact predicate spelling of a kind (`task`, `comp_act`, `exc_branch`, ...).
std::string_view predicate_name(ElementKind kind);

bool is_activity(ElementKind kind);
bool is_event(ElementKind kind);
bool is_gateway(ElementKind kind);
bool is_branch(ElementKind kind);
bool is_merge(ElementKind kind);
bool is_flow_element(ElementKind kind);

// bp(p,s,e) for top-level processes, comp_act(a,s,e) for sub-processes.
struct ProcessRecord {
  ElementId id;
  ElementId start;
  ElementId end;
  auto operator<=>(const ProcessRecord&) const = default;
};

struct SeqEdge {
  ElementId from;
  ElementId to;
  ElementId process;
  auto operator<=>(const SeqEdge&) const = default;
};

// exception(e,a,p): event `event` interrupts activity `activity`.
struct ExceptionRecord {
  ElementId event;
  ElementId activity;
  ElementId process;
  auto operator<=>(const ExceptionRecord&) const = default;
};

// input/output(a,i,p) and assigned(a,part,p) share this shape.
struct ActivityLink {
  ElementId activity;
  ElementId target;
  ElementId process;
  auto operator<=>(const ActivityLink&) const = default;
};

// Ground BPAL facts for one or more process schemas. Facts have set
// semantics: adding a fact twice is a no-op.
class ProcessSchema {
 public:
  void add_process(ProcessRecord record);
  void add_compound(ProcessRecord record);
  void classify(const ElementId& id, ElementKind kind);
  void add_seq(SeqEdge edge);
  void add_exception(ExceptionRecord record);
  void add_input(ActivityLink link);
  void add_output(ActivityLink link);
  void add_assignment(ActivityLink link);
  // Abstract meta-model categories asserted directly (`element`, `activity`,
  // `event`). They carry no behavior but take part in disjointness checks.
  void declare_abstract(const ElementId& id, std::string category);

  const std::vector<ProcessRecord>& processes() const { return processes_; }
  const std::map<ElementId, ProcessRecord>& compounds() const { return compounds_; }
  const std::vector<SeqEdge>& seq() const { return seq_; }
  const std::vector<ExceptionRecord>& exceptions() const { return exceptions_; }
  const std::vector<ActivityLink>& inputs() const { return inputs_; }
  const std::vector<ActivityLink>& outputs() const { return outputs_; }
  const std::vector<ActivityLink>& assignments() const { return assignments_; }
  const std::map<ElementId, std::set<ElementKind>>& classification() const { return kinds_; }
  const std::map<ElementId, std::set<std::string>>& abstract_declarations() const {
    return abstract_;
  }

  const ProcessRecord* top_level(const ElementId& id) const;
  const ProcessRecord* compound(const ElementId& id) const;
  // bp or comp_act record with this id.
  const ProcessRecord* process(const ElementId& id) const;
  bool is_process(const ElementId& id) const { return process(id) != nullptr; }

  bool is_classified(const ElementId& id) const { return kinds_.count(id) > 0; }
  bool has_kind(const ElementId& id, ElementKind kind) const;
  // The first classification of `id` (there is exactly one in a schema that
  // respects meta-model disjointness).
  std::optional<ElementKind> kind(const ElementId& id) const;
  bool is_activity(const ElementId& id) const;
  bool is_event(const ElementId& id) const;

  const std::vector<ElementId>& successors(const ElementId& id, const ElementId& process) const;
  const std::vector<ElementId>& predecessors(const ElementId& id, const ElementId& process) const;
  bool has_seq(const ElementId& from, const ElementId& to, const ElementId& process) const;

  // Process in whose sequence flow `id` occurs (first one, by fact order).
  std::optional<ElementId> owner(const ElementId& id) const;
  // Flow elements occurring in the sequence flow of `process`, sorted.
  std::vector<ElementId> elements_of(const ElementId& process) const;
  // `process` plus every compound activity nested below it.
  std::set<ElementId> process_closure(const ElementId& process) const;

  std::vector<const ExceptionRecord*> exceptions_of(const ElementId& activity) const;
  std::vector<ElementId> inputs_of(const ElementId& activity, const ElementId& process) const;
  std::vector<ElementId> outputs_of(const ElementId& activity, const ElementId& process) const;

  // Serializes to the `.bps` fact format; parse_process_facts reads it back.
  std::string to_facts() const;

 private:
  std::vector<ProcessRecord> processes_;
  std::map<ElementId, ProcessRecord> compounds_;
  std::map<ElementId, std::set<ElementKind>> kinds_;
  std::map<ElementId, std::set<std::string>> abstract_;
  std::vector<SeqEdge> seq_;
  std::set<SeqEdge> seq_set_;
  std::vector<ExceptionRecord> exceptions_;
  std::vector<ActivityLink> inputs_;
  std::vector<ActivityLink> outputs_;
  std::vector<ActivityLink> assignments_;
  std::map<std::pair<ElementId, ElementId>, std::vector<ElementId>> succ_;
  std::map<std::pair<ElementId, ElementId>, std::vector<ElementId>> pred_;
  std::map<ElementId, ElementId> owner_;
};

}  // namespace bpkb

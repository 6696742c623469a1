#include "bpkb/schema.h"

#include <algorithm>
#include <sstream>

#include "bpkb/term.h"

namespace bpkb {
namespace {

template <typename T>
void add_unique(std::vector<T>& facts, T fact) {
  if (std::find(facts.begin(), facts.end(), fact) == facts.end()) facts.push_back(std::move(fact));
}

void insert_sorted(std::vector<ElementId>& v, const ElementId& id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it == v.end() || *it != id) v.insert(it, id);
}

const std::vector<ElementId>& empty_ids() {
  static const std::vector<ElementId> kEmpty;
  return kEmpty;
}

std::string arg(const std::string& name) { return to_string(Term::constant(name)); }

}  // namespace

std::string_view predicate_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::kTask: return "task";
    case ElementKind::kCompoundActivity: return "comp_act";
    case ElementKind::kStartEvent: return "start_event";
    case ElementKind::kIntermediateEvent: return "int_event";
    case ElementKind::kEndEvent: return "end_event";
    case ElementKind::kExclusiveBranch: return "exc_branch";
    case ElementKind::kExclusiveMerge: return "exc_merge";
    case ElementKind::kInclusiveBranch: return "inc_branch";
    case ElementKind::kInclusiveMerge: return "inc_merge";
    case ElementKind::kParallelBranch: return "par_branch";
    case ElementKind::kParallelMerge: return "par_merge";
    case ElementKind::kItem: return "item";
    case ElementKind::kParticipant: return "participant";
  }
  return "?";
}

bool is_activity(ElementKind kind) {
  return kind == ElementKind::kTask || kind == ElementKind::kCompoundActivity;
}

bool is_event(ElementKind kind) {
  return kind == ElementKind::kStartEvent || kind == ElementKind::kIntermediateEvent ||
         kind == ElementKind::kEndEvent;
}

bool is_branch(ElementKind kind) {
  return kind == ElementKind::kExclusiveBranch || kind == ElementKind::kInclusiveBranch ||
         kind == ElementKind::kParallelBranch;
}

bool is_merge(ElementKind kind) {
  return kind == ElementKind::kExclusiveMerge || kind == ElementKind::kInclusiveMerge ||
         kind == ElementKind::kParallelMerge;
}

bool is_gateway(ElementKind kind) { return is_branch(kind) || is_merge(kind); }

bool is_flow_element(ElementKind kind) {
  return is_activity(kind) || is_event(kind) || is_gateway(kind);
}

void ProcessSchema::add_process(ProcessRecord record) { add_unique(processes_, std::move(record)); }

void ProcessSchema::add_compound(ProcessRecord record) {
  kinds_[record.id].insert(ElementKind::kCompoundActivity);
  compounds_.emplace(record.id, std::move(record));
}

void ProcessSchema::classify(const ElementId& id, ElementKind kind) { kinds_[id].insert(kind); }

void ProcessSchema::declare_abstract(const ElementId& id, std::string category) {
  abstract_[id].insert(std::move(category));
}

void ProcessSchema::add_seq(SeqEdge edge) {
  if (!seq_set_.insert(edge).second) return;
  insert_sorted(succ_[{edge.from, edge.process}], edge.to);
  insert_sorted(pred_[{edge.to, edge.process}], edge.from);
  owner_.emplace(edge.from, edge.process);
  owner_.emplace(edge.to, edge.process);
  seq_.push_back(std::move(edge));
}

void ProcessSchema::add_exception(ExceptionRecord record) {
  owner_.emplace(record.event, record.process);
  add_unique(exceptions_, std::move(record));
}

void ProcessSchema::add_input(ActivityLink link) { add_unique(inputs_, std::move(link)); }
void ProcessSchema::add_output(ActivityLink link) { add_unique(outputs_, std::move(link)); }
void ProcessSchema::add_assignment(ActivityLink link) { add_unique(assignments_, std::move(link)); }

const ProcessRecord* ProcessSchema::top_level(const ElementId& id) const {
  for (const auto& p : processes_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

const ProcessRecord* ProcessSchema::compound(const ElementId& id) const {
  auto it = compounds_.find(id);
  return it == compounds_.end() ? nullptr : &it->second;
}

const ProcessRecord* ProcessSchema::process(const ElementId& id) const {
  if (const ProcessRecord* p = top_level(id)) return p;
  return compound(id);
}

bool ProcessSchema::has_kind(const ElementId& id, ElementKind kind) const {
  auto it = kinds_.find(id);
  return it != kinds_.end() && it->second.count(kind) > 0;
}

std::optional<ElementKind> ProcessSchema::kind(const ElementId& id) const {
  auto it = kinds_.find(id);
  if (it == kinds_.end() || it->second.empty()) return std::nullopt;
  return *it->second.begin();
}

bool ProcessSchema::is_activity(const ElementId& id) const {
  return has_kind(id, ElementKind::kTask) || has_kind(id, ElementKind::kCompoundActivity);
}

bool ProcessSchema::is_event(const ElementId& id) const {
  return has_kind(id, ElementKind::kStartEvent) || has_kind(id, ElementKind::kIntermediateEvent) ||
         has_kind(id, ElementKind::kEndEvent);
}

const std::vector<ElementId>& ProcessSchema::successors(const ElementId& id,
                                                        const ElementId& process) const {
  auto it = succ_.find({id, process});
  return it == succ_.end() ? empty_ids() : it->second;
}

const std::vector<ElementId>& ProcessSchema::predecessors(const ElementId& id,
                                                          const ElementId& process) const {
  auto it = pred_.find({id, process});
  return it == pred_.end() ? empty_ids() : it->second;
}

bool ProcessSchema::has_seq(const ElementId& from, const ElementId& to,
                            const ElementId& process) const {
  return seq_set_.count(SeqEdge{from, to, process}) > 0;
}

std::optional<ElementId> ProcessSchema::owner(const ElementId& id) const {
  auto it = owner_.find(id);
  if (it == owner_.end()) return std::nullopt;
  return it->second;
}

std::vector<ElementId> ProcessSchema::elements_of(const ElementId& process) const {
  std::set<ElementId> ids;
  for (const auto& e : seq_) {
    if (e.process != process) continue;
    ids.insert(e.from);
    ids.insert(e.to);
  }
  for (const auto& x : exceptions_) {
    if (x.process == process) ids.insert(x.event);
  }
  return {ids.begin(), ids.end()};
}

std::set<ElementId> ProcessSchema::process_closure(const ElementId& process) const {
  std::set<ElementId> out{process};
  std::vector<ElementId> work{process};
  while (!work.empty()) {
    ElementId p = std::move(work.back());
    work.pop_back();
    for (const auto& id : elements_of(p)) {
      if (compounds_.count(id) && out.insert(id).second) work.push_back(id);
    }
  }
  return out;
}

std::vector<const ExceptionRecord*> ProcessSchema::exceptions_of(const ElementId& activity) const {
  std::vector<const ExceptionRecord*> out;
  for (const auto& x : exceptions_) {
    if (x.activity == activity) out.push_back(&x);
  }
  return out;
}

std::vector<ElementId> ProcessSchema::inputs_of(const ElementId& activity,
                                                const ElementId& process) const {
  std::vector<ElementId> out;
  for (const auto& l : inputs_) {
    if (l.activity == activity && l.process == process) out.push_back(l.target);
  }
  return out;
}

std::vector<ElementId> ProcessSchema::outputs_of(const ElementId& activity,
                                                 const ElementId& process) const {
  std::vector<ElementId> out;
  for (const auto& l : outputs_) {
    if (l.activity == activity && l.process == process) out.push_back(l.target);
  }
  return out;
}

std::string ProcessSchema::to_facts() const {
  std::ostringstream out;
  for (const auto& p : processes_) {
    out << "bp(" << arg(p.id) << "," << arg(p.start) << "," << arg(p.end) << ")\n";
  }
  for (const auto& [id, c] : compounds_) {
    out << "comp_act(" << arg(c.id) << "," << arg(c.start) << "," << arg(c.end) << ")\n";
  }
  for (const auto& [id, kinds] : kinds_) {
    for (ElementKind k : kinds) {
      if (k == ElementKind::kCompoundActivity) continue;
      out << predicate_name(k) << "(" << arg(id) << ")\n";
    }
  }
  for (const auto& [id, cats] : abstract_) {
    for (const auto& c : cats) out << c << "(" << arg(id) << ")\n";
  }
  for (const auto& e : seq_) {
    out << "seq(" << arg(e.from) << "," << arg(e.to) << "," << arg(e.process) << ")\n";
  }
  for (const auto& x : exceptions_) {
    out << "exception(" << arg(x.event) << "," << arg(x.activity) << "," << arg(x.process) << ")\n";
  }
  auto links = [&](std::string_view pred, const std::vector<ActivityLink>& v) {
    for (const auto& l : v) {
      out << pred << "(" << arg(l.activity) << "," << arg(l.target) << "," << arg(l.process) << ")\n";
    }
  };
  links("input", inputs_);
  links("output", outputs_);
  links("assigned", assignments_);
  return out.str();
}

}  // namespace bpkb

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "bpkb/process_model.h"

namespace bpkb {
namespace {

class Checker {
 public:
  explicit Checker(const ProcessSchema& schema) : schema_(schema) {}

  ViolationReport run() {
    check_classification();
    check_references();
    std::set<ElementId> seen;
    for (const auto& p : schema_.processes()) {
      if (!seen.insert(p.id).second) {
        add("1", {p.id}, "process '" + p.id + "' has more than one start/end declaration");
        continue;
      }
      check_process(p);
    }
    for (const auto& [id, c] : schema_.compounds()) check_process(c);
    check_placement();
    check_hierarchy();
    std::sort(report_.violations.begin(), report_.violations.end());
    report_.violations.erase(std::unique(report_.violations.begin(), report_.violations.end()),
                             report_.violations.end());
    return std::move(report_);
  }

 private:
  // Flow elements that occur in no process at all.
  void check_placement() {
    std::set<ElementId> placed;
    for (const auto& p : schema_.processes()) placed.insert({p.start, p.end});
    for (const auto& [id, c] : schema_.compounds()) placed.insert({c.start, c.end});
    for (const auto& e : schema_.seq()) placed.insert({e.from, e.to});
    for (const auto& x : schema_.exceptions()) placed.insert(x.event);
    for (const auto& [id, kinds] : schema_.classification()) {
      bool flow = std::any_of(kinds.begin(), kinds.end(), [](ElementKind k) { return is_flow_element(k); });
      if (flow && !placed.count(id)) add("2", {id}, "'" + id + "' does not occur in any process");
    }
  }

  void add(std::string constraint, std::vector<ElementId> elements, std::string message) {
    report_.violations.push_back({std::move(constraint), std::move(elements), std::move(message)});
  }

  bool is_exception_event(const ElementId& id, const ElementId& process) const {
    for (const auto& x : schema_.exceptions()) {
      if (x.event == id && x.process == process) return true;
    }
    return false;
  }

  void check_classification() {
    for (const auto& [id, kinds] : schema_.classification()) {
      if (kinds.size() > 1) {
        std::string names;
        for (ElementKind k : kinds) {
          if (!names.empty()) names += ", ";
          names += predicate_name(k);
        }
        add("meta-model", {id}, "'" + id + "' has disjoint classifications: " + names);
      }
    }
    for (const auto& [id, cats] : schema_.abstract_declarations()) {
      auto kind = schema_.kind(id);
      if (!kind) {
        add("meta-model", {id}, "'" + id + "' is declared abstractly but has no concrete classification");
        continue;
      }
      for (const auto& c : cats) {
        bool fits = (c == "activity" && is_activity(*kind)) || (c == "event" && is_event(*kind)) ||
                    (c == "element" && is_flow_element(*kind));
        if (!fits) {
          add("meta-model", {id},
              "'" + id + "' is declared " + c + " but classified " + std::string(predicate_name(*kind)));
        }
      }
    }
  }

  void expect_kind(const ElementId& id, const std::function<bool(ElementKind)>& pred,
                   const std::string& what) {
    auto kind = schema_.kind(id);
    if (!kind) {
      add("meta-model", {id}, "'" + id + "' is referenced but not classified");
    } else if (!pred(*kind)) {
      add("meta-model", {id}, "'" + id + "' must be " + what);
    }
  }

  void expect_process(const ElementId& id) {
    if (!schema_.is_process(id)) add("reference", {id}, "unknown process '" + id + "'");
  }

  void check_references() {
    auto flow = [](ElementKind k) { return is_flow_element(k); };
    auto activity = [](ElementKind k) { return is_activity(k); };
    for (const auto& p : schema_.processes()) {
      expect_kind(p.start, [](ElementKind k) { return k == ElementKind::kStartEvent; }, "a start event");
      expect_kind(p.end, [](ElementKind k) { return k == ElementKind::kEndEvent; }, "an end event");
    }
    for (const auto& [id, c] : schema_.compounds()) {
      expect_kind(c.start, [](ElementKind k) { return k == ElementKind::kStartEvent; }, "a start event");
      expect_kind(c.end, [](ElementKind k) { return k == ElementKind::kEndEvent; }, "an end event");
    }
    for (const auto& e : schema_.seq()) {
      expect_kind(e.from, flow, "a flow element");
      expect_kind(e.to, flow, "a flow element");
      expect_process(e.process);
    }
    for (const auto& x : schema_.exceptions()) {
      expect_kind(x.event, [](ElementKind k) { return k == ElementKind::kIntermediateEvent; },
                  "an intermediate event");
      expect_kind(x.activity, activity, "an activity");
      expect_process(x.process);
    }
    auto item = [](ElementKind k) { return k == ElementKind::kItem; };
    for (const auto* links : {&schema_.inputs(), &schema_.outputs()}) {
      for (const auto& l : *links) {
        expect_kind(l.activity, activity, "an activity");
        expect_kind(l.target, item, "an item");
        expect_process(l.process);
      }
    }
    for (const auto& l : schema_.assignments()) {
      expect_kind(l.activity, activity, "an activity");
      expect_kind(l.target, [](ElementKind k) { return k == ElementKind::kParticipant; },
                  "a participant");
      expect_process(l.process);
    }
  }

  void check_process(const ProcessRecord& p) {
    const ElementId& id = p.id;
    std::vector<ElementId> elements = schema_.elements_of(id);
    std::vector<ElementId> starts, ends;
    for (const auto& el : elements) {
      if (schema_.has_kind(el, ElementKind::kStartEvent)) starts.push_back(el);
      if (schema_.has_kind(el, ElementKind::kEndEvent)) ends.push_back(el);
    }
    if (!schema_.has_kind(p.start, ElementKind::kStartEvent)) {
      add("1", {p.start}, "process '" + id + "' declares start '" + p.start + "', which is not a start event");
    }
    if (!schema_.has_kind(p.end, ElementKind::kEndEvent)) {
      add("1", {p.end}, "process '" + id + "' declares end '" + p.end + "', which is not an end event");
    }
    if (starts.size() > 1 || (starts.size() == 1 && starts[0] != p.start)) {
      add("1", starts, "process '" + id + "' does not have a unique start event '" + p.start + "'");
    }
    if (ends.size() > 1 || (ends.size() == 1 && ends[0] != p.end)) {
      add("1", ends, "process '" + id + "' does not have a unique end event '" + p.end + "'");
    }

    // Exceptions leave their activity without a seq edge.
    std::map<ElementId, std::vector<ElementId>> fwd, bwd;
    for (const auto& el : elements) {
      for (const auto& s : schema_.successors(el, id)) {
        fwd[el].push_back(s);
        bwd[s].push_back(el);
      }
    }
    for (const auto& x : schema_.exceptions()) {
      if (x.process != id) continue;
      fwd[x.activity].push_back(x.event);
      bwd[x.event].push_back(x.activity);
    }
    std::set<ElementId> from_start = closure(p.start, fwd);
    std::set<ElementId> to_end = closure(p.end, bwd);
    for (const auto& el : elements) {
      if (!from_start.count(el) || !to_end.count(el)) {
        add("2", {el, id}, "'" + el + "' is not on a path from '" + p.start + "' to '" + p.end +
                               "' in '" + id + "'");
      }
    }

    for (const auto& el : elements) {
      auto kind = schema_.kind(el);
      if (!kind) continue;
      std::size_t preds = schema_.predecessors(el, id).size();
      std::size_t succs = schema_.successors(el, id).size();
      std::string where = "'" + el + "' in '" + id + "'";
      if (*kind == ElementKind::kStartEvent && preds > 0) add("3", {el, id}, where + ": start event has predecessors");
      if (*kind == ElementKind::kEndEvent && succs > 0) add("3", {el, id}, where + ": end event has successors");
      if (is_branch(*kind) && (preds != 1 || succs < 2)) {
        add("4", {el, id}, where + ": branch gateway needs one predecessor and at least two successors");
      }
      if (is_merge(*kind) && (preds < 2 || succs != 1)) {
        add("4", {el, id}, where + ": merge gateway needs at least two predecessors and one successor");
      }
      if (is_activity(*kind) && (preds != 1 || succs != 1)) {
        add("5", {el, id}, where + ": activity needs exactly one predecessor and one successor");
      }
      if (*kind == ElementKind::kIntermediateEvent) {
        if (is_exception_event(el, id)) {
          if (succs != 1) add("5", {el, id}, where + ": exception event needs exactly one successor");
        } else if (preds != 1 || succs != 1) {
          add("5", {el, id}, where + ": intermediate event needs exactly one predecessor and one successor");
        }
      }
    }
  }

  static std::set<ElementId> closure(const ElementId& root,
                                     const std::map<ElementId, std::vector<ElementId>>& adj) {
    std::set<ElementId> seen{root};
    std::vector<ElementId> work{root};
    while (!work.empty()) {
      ElementId x = std::move(work.back());
      work.pop_back();
      auto it = adj.find(x);
      if (it == adj.end()) continue;
      for (const auto& y : it->second) {
        if (seen.insert(y).second) work.push_back(y);
      }
    }
    return seen;
  }

  void check_hierarchy() {
    std::map<ElementId, std::vector<ElementId>> children;
    for (const auto& [id, c] : schema_.compounds()) {
      for (const auto& el : schema_.elements_of(id)) {
        if (schema_.compound(el)) children[id].push_back(el);
      }
    }
    for (const auto& [id, c] : schema_.compounds()) {
      bool cyclic = false;
      for (const auto& child : children[id]) {
        if (closure(child, children).count(id)) cyclic = true;
      }
      if (cyclic) add("6", {id}, "compound activity '" + id + "' contains itself");
    }
  }

  const ProcessSchema& schema_;
  ViolationReport report_;
};

}  // namespace

ViolationReport well_formedness(const ProcessSchema& schema) { return Checker(schema).run(); }

}  // namespace bpkb

#include <deque>
#include <set>

#include "bpkb/error.h"
#include "bpkb/process_model.h"

namespace bpkb {
namespace {

void require_process(const ElementId& process, const ProcessSchema& schema) {
  if (schema.is_process(process)) return;
  for (const auto& e : schema.seq()) {
    if (e.process == process) return;
  }
  throw InputError("unknown process '" + process + "'");
}

}  // namespace

bool seq_plus(const ElementId& from, const ElementId& to, const ElementId& process,
              const ProcessSchema& schema) {
  return n_reachable(from, to, ElementId{}, process, schema);
}

bool n_reachable(const ElementId& from, const ElementId& to, const ElementId& avoid,
                 const ElementId& process, const ProcessSchema& schema) {
  require_process(process, schema);
  std::set<ElementId> seen;
  std::deque<ElementId> work{from};
  while (!work.empty()) {
    ElementId x = std::move(work.front());
    work.pop_front();
    for (const auto& z : schema.successors(x, process)) {
      if (!avoid.empty() && z == avoid) continue;
      if (z == to) return true;
      if (seen.insert(z).second) work.push_back(z);
    }
  }
  return false;
}

}  // namespace bpkb

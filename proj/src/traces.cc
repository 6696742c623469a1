#include <algorithm>
#include <set>

#include "bpkb/error.h"
#include "bpkb/services.h"
#include "bpkb/text.h"

namespace bpkb {
namespace {

bool is_final(const State& s, const ProcessRecord& p) { return s.contains(Fluent::cf(p.end, kEndToken, p.id)); }

const ProcessRecord& top_level(const ElementId& process, const EnactmentContext& ctx) {
  const ProcessRecord* p = ctx.schema().top_level(process);
  if (!p) throw InputError("'" + process + "' is not a top-level process");
  return *p;
}

}  // namespace

std::string to_string(const Trace& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t[i]);
  }
  return out + "]";
}

Trace parse_trace(std::string_view text) {
  std::string body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw ParseError("trace starts with '[' but does not end with ']'", 1, body.size());
    body = trim(std::string_view(body).substr(1, body.size() - 2));
  }
  Trace out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    char c = i < body.size() ? body[i] : ',';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ',' || c == '\n') && depth == 0) {
      std::string item = trim(std::string_view(body).substr(start, i - start));
      start = i + 1;
      if (item.empty()) {
        if (i < body.size()) throw ParseError("empty action in trace", 1, i + 1);
        continue;
      }
      out.push_back(parse_action(item));
    }
  }
  return out;
}

bool check_trace(const Trace& trace, const ElementId& process, const EnactmentContext& ctx) {
  const ProcessRecord& p = top_level(process, ctx);
  std::set<State> current{initial_state(process, ctx)};
  for (const auto& action : trace) {
    std::set<State> next;
    for (const auto& s : current) {
      for (auto& t : successors(s, ctx)) {
        if (t.action == action) next.insert(std::move(t.target));
      }
    }
    if (next.empty()) return false;
    current = std::move(next);
  }
  return std::any_of(current.begin(), current.end(), [&](const State& s) { return is_final(s, p); });
}

bool satisfies(const Trace& trace, const OrderConstraint& c) {
  Action a = Action::complete(c.first);
  Action b = Action::complete(c.second);
  auto first = std::find(trace.begin(), trace.end(), a);
  return first != trace.end() && std::find(first + 1, trace.end(), b) != trace.end();
}

std::vector<Trace> generate_traces(const ElementId& process, const EnactmentContext& ctx, std::size_t max_len,
                                   const std::optional<OrderConstraint>& cond, std::size_t limit) {
  const ProcessRecord& p = top_level(process, ctx);
  std::set<Trace> found;
  Trace prefix;
  // Depth-first over (state, prefix); a prefix is recorded once even when
  // several runs produce it.
  auto visit = [&](auto&& self, const State& s) -> void {
    if (is_final(s, p) && !prefix.empty() && (!cond || satisfies(prefix, *cond))) {
      found.insert(prefix);
      if (found.size() > limit) {
        throw InputError("more than " + std::to_string(limit) + " correct traces; use a smaller length bound");
      }
    }
    if (prefix.size() == max_len) return;
    for (const auto& t : successors(s, ctx)) {
      prefix.push_back(t.action);
      self(self, t.target);
      prefix.pop_back();
    }
  };
  visit(visit, initial_state(process, ctx));
  return {found.begin(), found.end()};
}

}  // namespace bpkb

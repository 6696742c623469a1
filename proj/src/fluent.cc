#include "bpkb/fluent.h"

#include <algorithm>
#include <functional>

#include "bpkb/error.h"
#include "bpkb/term.h"
#include "bpkb/text.h"

namespace bpkb {

const char* fluent_name(FluentKind kind) {
  switch (kind) {
    case FluentKind::kCf: return "cf";
    case FluentKind::kEn: return "en";
    case FluentKind::kWrtn: return "wrtn";
    case FluentKind::kTf: return "tf";
  }
  return "?";
}

std::size_t fluent_arity(FluentKind kind) { return kind == FluentKind::kEn ? 2 : 3; }

Fluent Fluent::cf(std::string from, std::string to, std::string process) {
  return {FluentKind::kCf, {std::move(from), std::move(to), std::move(process)}};
}
Fluent Fluent::en(std::string activity, std::string process) {
  return {FluentKind::kEn, {std::move(activity), std::move(process), {}}};
}
Fluent Fluent::wrtn(std::string activity, std::string item, std::string process) {
  return {FluentKind::kWrtn, {std::move(activity), std::move(item), std::move(process)}};
}
Fluent Fluent::tf(std::string subject, std::string predicate, std::string object) {
  return {FluentKind::kTf, {std::move(subject), std::move(predicate), std::move(object)}};
}

std::string to_string(const Fluent& f) {
  std::string out = fluent_name(f.kind);
  out += "(";
  for (std::size_t i = 0; i < fluent_arity(f.kind); ++i) {
    if (i) out += ",";
    out += to_string(Term::constant(f.args[i]));
  }
  return out + ")";
}

State::State(std::vector<Fluent> fluents) : fluents_(std::move(fluents)) {
  std::sort(fluents_.begin(), fluents_.end());
  fluents_.erase(std::unique(fluents_.begin(), fluents_.end()), fluents_.end());
}

bool State::contains(const Fluent& f) const {
  return std::binary_search(fluents_.begin(), fluents_.end(), f);
}

State State::update(const std::vector<Fluent>& removed, const std::vector<Fluent>& added) const {
  std::vector<Fluent> out;
  out.reserve(fluents_.size() + added.size());
  for (const auto& f : fluents_) {
    if (std::find(removed.begin(), removed.end(), f) == removed.end()) out.push_back(f);
  }
  out.insert(out.end(), added.begin(), added.end());
  return State(std::move(out));
}

std::vector<std::array<std::string, 3>> State::tf_triples() const {
  std::vector<std::array<std::string, 3>> out;
  for (const auto& f : fluents_) {
    if (f.kind == FluentKind::kTf) out.push_back(f.args);
  }
  return out;
}

std::size_t State::hash() const {
  std::size_t h = fluents_.size();
  std::hash<std::string> hs;
  for (const auto& f : fluents_) {
    h = h * 1000003u ^ static_cast<std::size_t>(f.kind);
    for (const auto& a : f.args) h = (h * 31u) ^ hs(a);
  }
  return h;
}

std::string to_string(const State& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.fluents().size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.fluents()[i]);
  }
  return out + "}";
}

std::string to_string(const Action& a) {
  return std::string(a.kind == ActionKind::kBegin ? "begin(" : "complete(") +
         to_string(Term::constant(a.element)) + ")";
}

Action parse_action(std::string_view text) {
  Scanner in(text, 1, false);
  Action a;
  if (in.consume_word("begin")) {
    a.kind = ActionKind::kBegin;
  } else if (in.consume_word("complete")) {
    a.kind = ActionKind::kComplete;
  } else {
    in.fail("expected begin(...) or complete(...)");
  }
  in.expect('(');
  a.element = in.term(false, false).name;
  in.expect(')');
  if (!in.at_end()) in.fail("unexpected text after action");
  return a;
}

}  // namespace bpkb

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bpkb/schema.h"

namespace bpkb {

// Reserved constants for the pseudo-elements before a start event and after
// an end event: cf(start, s, p) and cf(e, end, p).
inline constexpr const char* kStartToken = "start";
inline constexpr const char* kEndToken = "end";

enum class FluentKind : std::uint8_t { kCf, kEn, kWrtn, kTf };

const char* fluent_name(FluentKind kind);
std::size_t fluent_arity(FluentKind kind);

// Ground fluent. en(a, p) leaves the third slot empty.
struct Fluent {
  FluentKind kind = FluentKind::kCf;
  std::array<std::string, 3> args;

  static Fluent cf(std::string from, std::string to, std::string process);
  static Fluent en(std::string activity, std::string process);
  static Fluent wrtn(std::string activity, std::string item, std::string process);
  static Fluent tf(std::string subject, std::string predicate, std::string object);

  auto operator<=>(const Fluent&) const = default;
};

std::string to_string(const Fluent& f);

// A finite set of ground fluents kept sorted, so equal sets compare and hash
// equal.
class State {
 public:
  State() = default;
  explicit State(std::vector<Fluent> fluents);

  const std::vector<Fluent>& fluents() const { return fluents_; }
  std::size_t size() const { return fluents_.size(); }
  bool empty() const { return fluents_.empty(); }
  bool contains(const Fluent& f) const;

  // (this - removed) ∪ added.
  State update(const std::vector<Fluent>& removed, const std::vector<Fluent>& added) const;

  // The tf fluents as (subject, predicate, object) triples.
  std::vector<std::array<std::string, 3>> tf_triples() const;

  std::size_t hash() const;
  auto operator<=>(const State&) const = default;

 private:
  std::vector<Fluent> fluents_;
};

std::string to_string(const State& s);

struct StateHash {
  std::size_t operator()(const State& s) const { return s.hash(); }
};

enum class ActionKind : std::uint8_t { kBegin, kComplete };

struct Action {
  ActionKind kind = ActionKind::kComplete;
  ElementId element;

  static Action begin(ElementId e) { return {ActionKind::kBegin, std::move(e)}; }
  static Action complete(ElementId e) { return {ActionKind::kComplete, std::move(e)}; }
  auto operator<=>(const Action&) const = default;
};

std::string to_string(const Action& a);
// Parses `begin(x)` or `complete(x)`. Throws ParseError.
Action parse_action(std::string_view text);

}  // namespace bpkb

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bpkb {

// A constant or a named variable. Variables are written `?x` or with an
// uppercase first letter; the stored name carries neither convention.
struct Term {
  enum class Kind { kConstant, kVariable };

  Kind kind = Kind::kConstant;
  std::string name;

  static Term constant(std::string name) { return {Kind::kConstant, std::move(name)}; }
  static Term variable(std::string name) { return {Kind::kVariable, std::move(name)}; }

  bool is_variable() const { return kind == Kind::kVariable; }
  bool is_constant() const { return kind == Kind::kConstant; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

// Variable name -> constant.
using Substitution = std::map<std::string, std::string>;

// Applies `theta` to `t`; unbound variables are returned unchanged.
Term apply(const Substitution& theta, const Term& t);

// Renders a term the way the annotation/fact syntax reads it back: constants
// that would otherwise lex as variables are quoted, variables get a `?`.
std::string to_string(const Term& t);

// Whether `name` can be written as a bare constant (lowercase or digit first,
// identifier characters only).
bool is_bare_constant(const std::string& name);

std::string quote_constant(const std::string& name);

}  // namespace bpkb

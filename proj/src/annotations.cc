#include <algorithm>
#include <set>

#include "bpkb/annotations.h"
#include "bpkb/error.h"
#include "bpkb/text.h"

namespace bpkb {
namespace {

std::string constant_arg(const std::string& name) { return to_string(Term::constant(name)); }

class AnnotationParser {
 public:
  AnnotationParser(ProcessSchema& schema, TripleStore& store) : schema_(schema), store_(store) {}

  AnnotationSet run(std::string_view text) {
    for (const auto& line : logical_lines(text)) record(line);
    store_.close();
    return std::move(set_);
  }

 private:
  void record(const SourceLine& line) {
    Scanner in(line.text, line.number, false);
    if (!in.at_identifier()) in.fail("expected an annotation record");
    std::size_t col = in.column();
    std::string functor = in.identifier();
    in.expect('(');
    if (functor == "termRef") {
      TermAnnotation t;
      t.element = element(in);
      in.expect(',');
      std::string rest = trim(in.rest());
      if (!rest.empty() && rest.back() == '.') rest = trim(rest.substr(0, rest.size() - 1));
      if (rest.empty() || rest.back() != ')') in.fail("expected ')' after the concept");
      t.expression = trim(rest.substr(0, rest.size() - 1));
      if (t.expression.empty()) in.fail("empty concept expression");
      try {
        t.concept_name = add_concept(store_, t.expression);
      } catch (const ParseError& e) {
        throw ParseError("in concept: " + e.detail(), line.number, col);
      }
      set_.terms.push_back(std::move(t));
      return;
    }
    if (functor == "pre") {
      Precondition p;
      p.element = element(in);
      in.expect(',');
      p.condition = parse_fluent_expr(in, true);
      in.expect(',');
      p.process = process(in);
      close(in);
      set_.preconditions.push_back(std::move(p));
      return;
    }
    if (functor == "eff") {
      Effect e;
      e.element = element(in);
      in.expect(',');
      e.qualifier = parse_fluent_expr(in, true);
      in.expect(',');
      e.negative = fluent_list(in);
      in.expect(',');
      e.positive = fluent_list(in);
      in.expect(',');
      e.process = process(in);
      close(in);
      set_.effects.push_back(std::move(e));
      return;
    }
    if (functor == "c_seq") {
      GuardedFlow g;
      g.guard = parse_fluent_expr(in, true);
      in.expect(',');
      g.branch = element(in);
      in.expect(',');
      g.successor = element(in);
      in.expect(',');
      g.process = process(in);
      close(in);
      schema_.add_seq({g.branch, g.successor, g.process});
      set_.guards.push_back(std::move(g));
      return;
    }
    throw ParseError("unknown annotation record '" + functor + "'", line.number, col);
  }

  void close(Scanner& in) {
    in.expect(')');
    in.consume('.');
    if (!in.at_end()) in.fail("unexpected text after annotation record");
  }

  ElementId element(Scanner& in) {
    in.skip_space();
    std::size_t col = in.column();
    ElementId id = in.term(false, false).name;
    bool known = schema_.is_classified(id) || schema_.is_process(id);
    if (!known) throw ParseError("unknown element '" + id + "'", in.line(), col);
    return id;
  }

  ElementId process(Scanner& in) {
    in.skip_space();
    std::size_t col = in.column();
    ElementId id = in.term(false, false).name;
    if (!schema_.is_process(id)) throw ParseError("unknown process '" + id + "'", in.line(), col);
    return id;
  }

  std::vector<FluentPattern> fluent_list(Scanner& in) {
    std::vector<FluentPattern> out;
    in.expect('[');
    if (in.consume(']')) return out;
    do {
      in.skip_space();
      if (!in.at_identifier()) in.fail("expected a fluent");
      std::string functor = in.identifier();
      if (!is_fluent_functor(functor)) in.fail("expected a fluent, found '" + functor + "'");
      out.push_back(parse_fluent_arguments(in, functor, true));
    } while (in.consume(','));
    in.expect(']');
    return out;
  }

  ProcessSchema& schema_;
  TripleStore& store_;
  AnnotationSet set_;
};

std::string fluent_list_text(const std::vector<FluentPattern>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + "]";
}

// Named classes mentioned by a (possibly anonymous) class.
void named_parts(const TripleStore& store, const std::string& cls, std::set<std::string>& out,
                 std::set<std::string>& seen) {
  if (!seen.insert(cls).second) return;
  if (cls.rfind("_:", 0) != 0) {
    out.insert(cls);
    return;
  }
  for (const auto& t : store.asserted()) {
    if (t.subject != cls) continue;
    if (t.predicate == vocab::kIntersectionOf && t.has_list_object()) {
      for (const auto& x : std::get<TermList>(t.object)) named_parts(store, x, out, seen);
    } else if (t.predicate == vocab::kSomeValuesFrom) {
      named_parts(store, t.object_name(), out, seen);
    }
  }
}

void type_constants(const FluentPattern& p, std::set<std::string>& out) {
  if (p.kind == FluentKind::kTf && p.args[1].name == vocab::kType && p.args[2].is_constant()) {
    out.insert(p.args[2].name);
  }
}

void type_constants(const FluentExpr& e, std::set<std::string>& out) {
  if (e.kind == FluentExpr::Kind::kAtom) type_constants(e.atom, out);
  for (const auto& op : e.operands) type_constants(op, out);
}

}  // namespace

std::vector<const Precondition*> AnnotationSet::preconditions_of(const ElementId& element,
                                                                 const ElementId& process) const {
  std::vector<const Precondition*> out;
  for (const auto& p : preconditions) {
    if (p.element == element && p.process == process) out.push_back(&p);
  }
  return out;
}

std::vector<const Effect*> AnnotationSet::effects_of(const ElementId& element,
                                                     const ElementId& process) const {
  std::vector<const Effect*> out;
  for (const auto& e : effects) {
    if (e.element == element && e.process == process) out.push_back(&e);
  }
  return out;
}

bool AnnotationSet::is_guarded(const ElementId& branch, const ElementId& process) const {
  return std::any_of(guards.begin(), guards.end(), [&](const GuardedFlow& g) {
    return g.branch == branch && g.process == process;
  });
}

const FluentExpr* AnnotationSet::guard_of(const ElementId& branch, const ElementId& successor,
                                          const ElementId& process) const {
  for (const auto& g : guards) {
    if (g.branch == branch && g.successor == successor && g.process == process) return &g.guard;
  }
  return nullptr;
}

std::optional<std::string> AnnotationSet::concept_of(const ElementId& element) const {
  for (const auto& t : terms) {
    if (t.element == element) return t.concept_name;
  }
  return std::nullopt;
}

std::string AnnotationSet::to_text() const {
  std::string out;
  for (const auto& t : terms) {
    out += "termRef(" + constant_arg(t.element) + ", " + t.expression + ")\n";
  }
  for (const auto& p : preconditions) {
    out += "pre(" + constant_arg(p.element) + ", " + to_string(p.condition) + ", " +
           constant_arg(p.process) + ")\n";
  }
  for (const auto& e : effects) {
    out += "eff(" + constant_arg(e.element) + ", " + to_string(e.qualifier) + ", " +
           fluent_list_text(e.negative) + ", " + fluent_list_text(e.positive) + ", " +
           constant_arg(e.process) + ")\n";
  }
  for (const auto& g : guards) {
    out += "c_seq(" + to_string(g.guard) + ", " + constant_arg(g.branch) + ", " +
           constant_arg(g.successor) + ", " + constant_arg(g.process) + ")\n";
  }
  return out;
}

AnnotationSet parse_annotations(std::string_view text, ProcessSchema& schema, TripleStore& store) {
  return AnnotationParser(schema, store).run(text);
}

ViolationReport validate_annotations(const AnnotationSet& set, const ProcessSchema& schema,
                                     const TripleStore& store) {
  ViolationReport report;
  auto add = [&](std::vector<ElementId> elements, std::string message) {
    report.violations.push_back({"annotation", std::move(elements), std::move(message)});
  };
  std::set<std::string> known = store.named_classes();
  auto check_concept = [&](const ElementId& element, const std::string& cls) {
    if (cls == vocab::kThing || cls == vocab::kNothing) return;
    if (!known.count(cls)) add({element, cls}, "concept '" + cls + "' does not occur in the ontology");
  };
  auto in_process = [&](const ElementId& element, const ElementId& process) {
    auto elements = schema.elements_of(process);
    return std::binary_search(elements.begin(), elements.end(), element);
  };

  for (const auto& t : set.terms) {
    std::set<std::string> parts, seen;
    named_parts(store, t.concept_name, parts, seen);
    for (const auto& c : parts) check_concept(t.element, c);
  }
  for (const auto& p : set.preconditions) {
    if (!schema.is_activity(p.element)) {
      add({p.element}, "precondition on '" + p.element + "', which is not an activity, has no effect");
    } else if (!in_process(p.element, p.process)) {
      add({p.element, p.process}, "'" + p.element + "' does not occur in '" + p.process + "'");
    }
    std::set<std::string> types;
    type_constants(p.condition, types);
    for (const auto& c : types) check_concept(p.element, c);
  }
  for (const auto& e : set.effects) {
    if (!schema.is_activity(e.element)) {
      add({e.element}, "effect on '" + e.element + "', which is not an activity, has no effect");
    } else if (!in_process(e.element, e.process)) {
      add({e.element, e.process}, "'" + e.element + "' does not occur in '" + e.process + "'");
    }
    for (const auto& f : e.negative) {
      if (std::find(e.positive.begin(), e.positive.end(), f) != e.positive.end()) {
        add({e.element}, "fluent " + to_string(f) + " is both a negative and a positive effect");
      }
    }
    std::vector<std::string> q = variables(e.qualifier);
    std::vector<std::string> used;
    for (const auto& f : e.negative) collect_variables(f, used);
    for (const auto& f : e.positive) collect_variables(f, used);
    for (const auto& v : used) {
      if (std::find(q.begin(), q.end(), v) == q.end()) {
        add({e.element}, "variable " + v + " of an effect of '" + e.element + "' does not occur in its qualifier");
      }
    }
    std::set<std::string> types;
    type_constants(e.qualifier, types);
    for (const auto& f : e.negative) type_constants(f, types);
    for (const auto& f : e.positive) type_constants(f, types);
    for (const auto& c : types) check_concept(e.element, c);
  }
  for (const auto& g : set.guards) {
    auto kind = schema.kind(g.branch);
    if (!kind || (*kind != ElementKind::kExclusiveBranch && *kind != ElementKind::kInclusiveBranch)) {
      add({g.branch}, "guard attached to '" + g.branch + "', which is not an exclusive or inclusive branch");
    }
    if (!schema.has_seq(g.branch, g.successor, g.process)) {
      add({g.branch, g.successor}, "no sequence flow from '" + g.branch + "' to '" + g.successor + "'");
    }
    std::set<std::string> types;
    type_constants(g.guard, types);
    for (const auto& c : types) check_concept(g.branch, c);
  }
  std::sort(report.violations.begin(), report.violations.end());
  report.violations.erase(std::unique(report.violations.begin(), report.violations.end()),
                          report.violations.end());
  return report;
}

}  // namespace bpkb

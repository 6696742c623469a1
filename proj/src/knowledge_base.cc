#include "bpkb/knowledge_base.h"

#include <fstream>
#include <sstream>

#include "bpkb/bpmn.h"
#include "bpkb/error.h"

namespace bpkb {
namespace {

using Named = std::vector<std::pair<std::string, std::string>>;

Named read_all(const std::vector<std::string>& paths) {
  Named out;
  for (const auto& p : paths) out.emplace_back(p, read_file(p));
  return out;
}

template <typename F>
auto in_file(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), e.column(), name);
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

KnowledgeBase KnowledgeBase::load(const KnowledgeBaseSources& sources) {
  Named bps = read_all(sources.bps);
  for (const auto& path : sources.bpmn) {
    std::string xml = read_file(path);
    bps.emplace_back(path, in_file(path, [&] { return import_bpmn_xml(xml).to_facts(); }));
  }
  return build(std::move(bps), read_all(sources.ontology), read_all(sources.annotations));
}

KnowledgeBase KnowledgeBase::from_text(std::string_view bps, std::string_view ontology,
                                       std::string_view annotations) {
  Named o, a;
  if (!ontology.empty()) o.emplace_back("<ontology>", std::string(ontology));
  if (!annotations.empty()) a.emplace_back("<annotations>", std::string(annotations));
  return build({{"<bps>", std::string(bps)}}, std::move(o), std::move(a));
}

KnowledgeBase KnowledgeBase::build(Named bps, Named ontology, Named annotations) {
  if (bps.empty()) throw InputError("no process facts given");
  // Fact files are checked one at a time for syntax, then read together.
  std::string facts;
  for (const auto& [name, text] : bps) {
    in_file(name, [&] { return parse_process_facts(text); });
    facts += text;
    facts += "\n";
  }
  ProcessSchema schema = parse_process_facts(facts);
  if (schema.processes().empty()) throw InputError("no top-level process (bp fact) given");
  TripleStore store;
  for (const auto& [name, text] : ontology) in_file(name, [&] { load_into(store, text); return 0; });
  AnnotationSet set;
  for (const auto& [name, text] : annotations) {
    AnnotationSet more = in_file(name, [&] { return parse_annotations(text, schema, store); });
    set.terms.insert(set.terms.end(), more.terms.begin(), more.terms.end());
    set.preconditions.insert(set.preconditions.end(), more.preconditions.begin(), more.preconditions.end());
    set.effects.insert(set.effects.end(), more.effects.begin(), more.effects.end());
    set.guards.insert(set.guards.end(), more.guards.begin(), more.guards.end());
  }
  store.close();
  KnowledgeBase kb;
  kb.structure_ = well_formedness(schema);
  kb.annotation_report_ = validate_annotations(set, schema, store);
  kb.context_ = std::make_shared<EnactmentContext>(std::move(schema), std::move(store), std::move(set));
  return kb;
}

std::vector<ElementId> KnowledgeBase::top_level_processes() const {
  std::vector<ElementId> out;
  for (const auto& p : context_->schema().processes()) out.push_back(p.id);
  return out;
}

}  // namespace bpkb

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bpkb/annotations.h"
#include "bpkb/context.h"
#include "bpkb/process_model.h"

namespace bpkb {

// Input files of a knowledge base. Any of them may be empty, except that
// some process must come from `bps` or `bpmn`.
struct KnowledgeBaseSources {
  std::vector<std::string> bps;
  std::vector<std::string> bpmn;
  std::vector<std::string> ontology;  // triples or DL shorthand
  std::vector<std::string> annotations;
};

// Process facts, ontology and annotations loaded into one enactment
// context, together with the static checks on them.
class KnowledgeBase {
 public:
  // Reads the files. Parse errors name the file. Throws InputError when a
  // file cannot be read.
  static KnowledgeBase load(const KnowledgeBaseSources& sources);
  static KnowledgeBase from_text(std::string_view bps, std::string_view ontology = {},
                                 std::string_view annotations = {});

  const EnactmentContext& context() const { return *context_; }
  const ViolationReport& structure() const { return structure_; }
  const ViolationReport& annotation_report() const { return annotation_report_; }
  std::vector<ElementId> top_level_processes() const;

 private:
  KnowledgeBase() = default;
  static KnowledgeBase build(std::vector<std::pair<std::string, std::string>> bps,
                             std::vector<std::pair<std::string, std::string>> ontology,
                             std::vector<std::pair<std::string, std::string>> annotations);

  std::shared_ptr<EnactmentContext> context_;
  ViolationReport structure_;
  ViolationReport annotation_report_;
};

std::string read_file(const std::string& path);

}  // namespace bpkb

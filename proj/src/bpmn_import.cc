#include <array>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "bpkb/bpmn.h"
#include "bpkb/error.h"

namespace bpkb {
namespace {

namespace pt = boost::property_tree;

std::string local_name(const std::string& tag) {
  auto colon = tag.rfind(':');
  return colon == std::string::npos ? tag : tag.substr(colon + 1);
}

const std::set<std::string>& task_tags() {
  static const std::set<std::string> tags = {"task",        "userTask",    "serviceTask",      "scriptTask",
                                             "manualTask",  "sendTask",    "receiveTask",      "businessRuleTask"};
  return tags;
}

// Children that carry no process structure.
const std::set<std::string>& ignored_tags() {
  static const std::set<std::string> tags = {
      "<xmlattr>",      "<xmlcomment>",    "documentation",      "extensionElements", "incoming",
      "outgoing",       "ioSpecification", "property",           "textAnnotation",    "association",
      "dataInput",      "dataOutput",      "inputSet",           "outputSet",         "conditionExpression",
      "errorEventDefinition", "timerEventDefinition", "messageEventDefinition", "signalEventDefinition",
      "escalationEventDefinition", "terminateEventDefinition", "compensateEventDefinition",
      "conditionalEventDefinition", "linkEventDefinition", "cancelEventDefinition", "dataState",
      "multiInstanceLoopCharacteristics", "standardLoopCharacteristics"};
  return tags;
}

std::string attr(const pt::ptree& node, const std::string& name) {
  return node.get<std::string>("<xmlattr>." + name, "");
}

std::string required(const pt::ptree& node, const std::string& tag, const std::string& name) {
  std::string v = attr(node, name);
  if (v.empty()) throw InputError(tag + " without a '" + name + "' attribute");
  return v;
}

std::string text_of(const pt::ptree& node) {
  std::string s = node.data();
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

class Importer {
 public:
  ProcessSchema run(const pt::ptree& root) {
    const pt::ptree* definitions = nullptr;
    for (const auto& [tag, node] : root) {
      if (local_name(tag) == "definitions") definitions = &node;
    }
    if (!definitions) throw InputError("no BPMN definitions element");
    bool any = false;
    for (const auto& [tag, node] : *definitions) {
      if (local_name(tag) == "process") {
        process(node, required(node, "process", "id"), false);
        any = true;
      }
    }
    if (!any) throw InputError("the BPMN document contains no process");
    for (const auto& [activity, item, p] : inputs_) schema_.add_input({activity, resolve(item), p});
    for (const auto& [activity, item, p] : outputs_) schema_.add_output({activity, resolve(item), p});
    return std::move(schema_);
  }

 private:
  std::string resolve(const std::string& ref) const {
    auto it = references_.find(ref);
    return it == references_.end() ? ref : it->second;
  }

  void data_associations(const pt::ptree& activity, const std::string& id, const std::string& p) {
    for (const auto& [tag, node] : activity) {
      std::string name = local_name(tag);
      if (name == "dataInputAssociation") {
        for (const auto& [t, ref] : node) {
          if (local_name(t) == "sourceRef") inputs_.push_back({id, text_of(ref), p});
        }
      } else if (name == "dataOutputAssociation") {
        for (const auto& [t, ref] : node) {
          if (local_name(t) == "targetRef") outputs_.push_back({id, text_of(ref), p});
        }
      }
    }
  }

  void process(const pt::ptree& body, const std::string& p, bool compound) {
    std::vector<std::string> starts, ends;
    std::map<std::string, std::pair<int, int>> gateway_degree;
    std::map<std::string, std::string> gateway_kind;
    std::vector<std::pair<std::string, std::string>> flows;
    for (const auto& [tag, node] : body) {
      std::string name = local_name(tag);
      if (ignored_tags().count(name)) continue;
      if (name == "sequenceFlow") {
        flows.emplace_back(required(node, name, "sourceRef"), required(node, name, "targetRef"));
        continue;
      }
      if (name == "laneSet") {
        lanes(node, p);
        continue;
      }
      if (name == "dataObject") {
        schema_.classify(required(node, name, "id"), ElementKind::kItem);
        continue;
      }
      if (name == "dataObjectReference") {
        std::string id = required(node, name, "id");
        std::string target = attr(node, "dataObjectRef");
        if (target.empty()) {
          schema_.classify(id, ElementKind::kItem);
        } else {
          references_[id] = target;
        }
        continue;
      }
      std::string id = required(node, name, "id");
      if (task_tags().count(name)) {
        schema_.classify(id, ElementKind::kTask);
        data_associations(node, id, p);
      } else if (name == "subProcess") {
        process(node, id, true);
        data_associations(node, id, p);
      } else if (name == "startEvent") {
        schema_.classify(id, ElementKind::kStartEvent);
        starts.push_back(id);
      } else if (name == "endEvent") {
        schema_.classify(id, ElementKind::kEndEvent);
        ends.push_back(id);
      } else if (name == "intermediateCatchEvent" || name == "intermediateThrowEvent") {
        schema_.classify(id, ElementKind::kIntermediateEvent);
      } else if (name == "boundaryEvent") {
        schema_.classify(id, ElementKind::kIntermediateEvent);
        schema_.add_exception({id, required(node, name, "attachedToRef"), p});
      } else if (name == "exclusiveGateway" || name == "inclusiveGateway" || name == "parallelGateway") {
        gateway_kind[id] = name;
        gateway_degree[id];
      } else {
        throw InputError("unsupported BPMN element '" + name + "' (" + id + ")");
      }
    }
    for (const auto& [from, to] : flows) {
      if (gateway_degree.count(from)) ++gateway_degree[from].second;
      if (gateway_degree.count(to)) ++gateway_degree[to].first;
    }
    for (const auto& [id, degree] : gateway_degree) {
      auto [in, out] = degree;
      bool merge = in > 1 && out <= 1;
      bool branch = in <= 1 && out > 1;
      if (!merge && !branch) {
        throw InputError("gateway '" + id + "' has " + std::to_string(in) + " incoming and " + std::to_string(out) +
                         " outgoing flows; it must either split or join");
      }
      const std::string& k = gateway_kind[id];
      ElementKind kind = k == "exclusiveGateway"   ? (merge ? ElementKind::kExclusiveMerge : ElementKind::kExclusiveBranch)
                         : k == "inclusiveGateway" ? (merge ? ElementKind::kInclusiveMerge : ElementKind::kInclusiveBranch)
                                                   : (merge ? ElementKind::kParallelMerge : ElementKind::kParallelBranch);
      schema_.classify(id, kind);
    }
    for (const auto& [from, to] : flows) schema_.add_seq({from, to, p});
    if (starts.empty() || ends.empty()) {
      throw InputError("process '" + p + "' needs a start event and an end event");
    }
    ProcessRecord record{p, starts.front(), ends.front()};
    if (compound) {
      schema_.add_compound(record);
    } else {
      schema_.add_process(record);
    }
  }

  void lanes(const pt::ptree& lane_set, const std::string& p) {
    for (const auto& [tag, lane] : lane_set) {
      if (local_name(tag) != "lane") continue;
      std::string id = required(lane, "lane", "id");
      schema_.classify(id, ElementKind::kParticipant);
      for (const auto& [t, ref] : lane) {
        std::string name = local_name(t);
        if (name == "flowNodeRef") schema_.add_assignment({text_of(ref), id, p});
        if (name == "childLaneSet") lanes(ref, p);
      }
    }
  }

  ProcessSchema schema_;
  std::map<std::string, std::string> references_;
  std::vector<std::array<std::string, 3>> inputs_;
  std::vector<std::array<std::string, 3>> outputs_;
};

}  // namespace

ProcessSchema import_bpmn_xml(std::string_view xml) {
  pt::ptree root;
  std::istringstream in{std::string(xml)};
  try {
    pt::read_xml(in, root, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed XML: " + e.message(), e.line());
  }
  return Importer().run(root);
}

}  // namespace bpkb

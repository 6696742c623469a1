#pragma once

#include <string>

#include <json.hpp>

#include "bpkb/enactment.h"
#include "bpkb/process_model.h"
#include "bpkb/query.h"
#include "bpkb/services.h"

namespace bpkb {

using Json = nlohmann::ordered_json;

Json to_json(const Substitution& theta);
Json to_json(const Witness& w, const KripkeGraph& graph);
Json to_json(const Verdict& v, const KripkeGraph& graph);
Json to_json(const ViolationReport& r);
Json to_json(const ConsistencyReport& r, const KripkeGraph& graph);
Json to_json(const QueryResult& r);
Json to_json(const Trace& t);
Json summary_json(const KripkeGraph& graph);

std::string to_text(const Witness& w, const KripkeGraph& graph);
std::string to_text(const Verdict& v, const KripkeGraph& graph);
std::string to_text(const ViolationReport& r);
std::string to_text(const QueryResult& r);

}  // namespace bpkb

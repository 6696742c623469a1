#include "bpkb/report.h"

#include <algorithm>
#include <sstream>

namespace bpkb {

Json to_json(const Substitution& theta) {
  Json out = Json::object();
  for (const auto& [var, value] : theta) out[var] = value;
  return out;
}

Json to_json(const Witness& w, const KripkeGraph& graph) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < w.states.size(); ++i) {
    Json step{{"state", w.states[i]}, {"fluents", to_string(graph.states[w.states[i]])}};
    if (i < w.actions.size()) step["action"] = to_string(w.actions[i]);
    steps.push_back(std::move(step));
  }
  return steps;
}

Json to_json(const Verdict& v, const KripkeGraph& graph) {
  Json out{{"property", v.property}, {"holds", v.holds}};
  if (v.witness) out["witness"] = to_json(*v.witness, graph);
  if (!v.bindings.empty()) {
    Json b = Json::array();
    for (const auto& theta : v.bindings) b.push_back(to_json(theta));
    out["bindings"] = std::move(b);
  }
  return out;
}

Json to_json(const ViolationReport& r) {
  Json out = Json::array();
  for (const auto& v : r.violations) {
    out.push_back({{"constraint", v.constraint}, {"elements", v.elements}, {"message", v.message}});
  }
  return out;
}

Json to_json(const ConsistencyReport& r, const KripkeGraph& graph) {
  Json out = Json::array();
  for (const auto& v : r.violations) {
    Json j{{"kind", v.kind == ConsistencyViolation::Kind::kInconsistentState ? "inconsistent-state"
                                                                             : "negative-effect-holds"},
           {"state", v.state},
           {"message", v.message}};
    if (v.edge) j["action"] = to_string(graph.edges[*v.edge].action);
    if (v.fluent) j["fluent"] = to_string(*v.fluent);
    out.push_back(std::move(j));
  }
  return out;
}

Json to_json(const QueryResult& r) {
  Json out{{"boolean", r.boolean}, {"columns", r.columns}, {"rows", r.rows}};
  return out;
}

Json to_json(const Trace& t) {
  Json out = Json::array();
  for (const auto& a : t) out.push_back(to_string(a));
  return out;
}

Json summary_json(const KripkeGraph& graph) {
  return {{"process", graph.process},
          {"states", graph.size()},
          {"edges", graph.edges.size()},
          {"sinks", graph.sinks().size()}};
}

std::string to_text(const Witness& w, const KripkeGraph& graph) {
  std::ostringstream out;
  for (std::size_t i = 0; i < w.states.size(); ++i) {
    out << "    state " << w.states[i] << ": " << to_string(graph.states[w.states[i]]) << "\n";
    if (i < w.actions.size()) out << "      " << to_string(w.actions[i]) << "\n";
  }
  return out.str();
}

std::string to_text(const Verdict& v, const KripkeGraph& graph) {
  std::ostringstream out;
  out << v.property << ": " << (v.holds ? "holds" : "does not hold") << "\n";
  for (const auto& theta : v.bindings) {
    out << "  binding:";
    if (theta.empty()) out << " (none)";
    for (const auto& [var, value] : theta) out << " ?" << var << "=" << value;
    out << "\n";
  }
  if (v.witness) out << "  witness:\n" << to_text(*v.witness, graph);
  return out.str();
}

std::string to_text(const ViolationReport& r) {
  std::ostringstream out;
  for (const auto& v : r.violations) {
    out << "  [" << v.constraint << "] " << v.message << "\n";
  }
  return out.str();
}

std::string to_text(const QueryResult& r) {
  std::ostringstream out;
  if (r.columns.empty()) {
    out << (r.boolean ? "true" : "false") << "\n";
    return out.str();
  }
  std::vector<std::size_t> width;
  for (const auto& c : r.columns) width.push_back(c.size() + 1);
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells, bool header) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::string cell = header ? "?" + cells[i] : cells[i];
      out << cell;
      if (i + 1 < cells.size()) out << std::string(width[i] - cell.size() + 2, ' ');
    }
    out << "\n";
  };
  line(r.columns, true);
  for (const auto& row : r.rows) line(row, false);
  out << "(" << r.rows.size() << " row" << (r.rows.size() == 1 ? "" : "s") << ")\n";
  return out.str();
}

}  // namespace bpkb

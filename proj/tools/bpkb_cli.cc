// Command-line front end: validate, space, verify, query, trace-check and
// trace-gen over a knowledge base given by --bps/--bpmn, --triples and --ann.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bpkb/error.h"
#include "bpkb/knowledge_base.h"
#include "bpkb/query.h"
#include "bpkb/report.h"
#include "bpkb/services.h"
#include "bpkb/text.h"

namespace {

using bpkb::Json;

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

struct Options {
  bpkb::KnowledgeBaseSources sources;
  std::size_t budget = bpkb::kDefaultStateBudget;
  std::string format = "text";
  std::string out;
  std::string process;
  // Command-specific.
  bool dump = false;
  std::vector<std::string> rules;
  std::string query;
  std::string trace;
  std::size_t max_len = 0;
  std::string before;
};

class Timer {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// Collects the text and JSON forms of one run.
struct Report {
  Json json = Json::object();
  std::ostringstream text;
};

std::string fixed(double ms) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(1);
  s << ms;
  return s.str();
}

std::string pick_process(const bpkb::KnowledgeBase& kb, const std::string& requested) {
  auto all = kb.top_level_processes();
  if (!requested.empty()) {
    if (std::find(all.begin(), all.end(), requested) == all.end()) {
      throw bpkb::InputError("'" + requested + "' is not a top-level process");
    }
    return requested;
  }
  if (all.size() != 1) throw bpkb::InputError("several top-level processes; choose one with --process");
  return all.front();
}

std::string text_or_file(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return bpkb::read_file(arg);
  return arg;
}

int validate(const Options&, const bpkb::KnowledgeBase& kb, Report& r) {
  const auto& s = kb.structure();
  const auto& a = kb.annotation_report();
  r.json["structure"] = bpkb::to_json(s);
  r.json["annotations"] = bpkb::to_json(a);
  r.text << "structure: " << (s.ok() ? "ok" : std::to_string(s.violations.size()) + " violation(s)") << "\n"
         << bpkb::to_text(s);
  r.text << "annotations: " << (a.ok() ? "ok" : std::to_string(a.violations.size()) + " violation(s)") << "\n"
         << bpkb::to_text(a);
  return s.ok() && a.ok() ? kOk : kFails;
}

int space(const Options& o, bpkb::Analysis& an, Report& r) {
  const auto& g = an.graph();
  r.json["space"] = bpkb::summary_json(g);
  r.text << "process " << g.process << ": " << g.size() << " states, " << g.edges.size() << " edges, "
         << g.sinks().size() << " sinks\n";
  if (o.dump) {
    r.text << g.to_text();
    Json states = Json::array();
    for (const auto& s : g.states) states.push_back(bpkb::to_string(s));
    Json edges = Json::array();
    for (const auto& e : g.edges) edges.push_back({{"from", e.from}, {"action", bpkb::to_string(e.action)}, {"to", e.to}});
    r.json["graph"] = {{"initial", g.initial}, {"states", states}, {"edges", edges}, {"sinks", g.sinks()}};
  }
  return kOk;
}

int verify(const Options& o, bpkb::Analysis& an, Report& r, Json& query_times, Timer& timer) {
  const auto& g = an.graph();
  Json results = Json::array();
  bool ok = true;
  auto record = [&](const bpkb::Verdict& v, bool good) {
    results.push_back(bpkb::to_json(v, g));
    r.text << bpkb::to_text(v, g);
    ok = ok && good;
    query_times.push_back({{"query", v.property}, {"ms", timer.lap()}});
  };
  auto otc = bpkb::option_to_complete(an);
  record(otc, otc.holds);
  auto inc = bpkb::inconsistency(an);
  record(inc, !inc.holds);

  auto stuck = bpkb::non_executable_activities(an);
  results.push_back({{"property", "non_executable_activities"}, {"holds", !stuck.empty()}, {"activities", stuck}});
  r.text << "non_executable_activities: " << (stuck.empty() ? "none" : "");
  for (std::size_t i = 0; i < stuck.size(); ++i) r.text << (i ? ", " : "") << stuck[i];
  r.text << "\n";
  ok = ok && stuck.empty();
  query_times.push_back({{"query", "non_executable_activities"}, {"ms", timer.lap()}});

  auto consistency = bpkb::consistency_check(g, an.context());
  results.push_back({{"property", "consistency_condition"},
                     {"holds", consistency.ok()},
                     {"violations", bpkb::to_json(consistency, g)}});
  r.text << "consistency_condition: " << (consistency.ok() ? "holds" : "does not hold") << "\n";
  for (const auto& v : consistency.violations) r.text << "  " << v.message << "\n";
  ok = ok && consistency.ok();
  query_times.push_back({{"query", "consistency_condition"}, {"ms", timer.lap()}});

  for (const auto& rule : o.rules) {
    auto v = bpkb::compliance(an, bpkb::parse_formula(rule));
    v.property = "compliance " + rule;
    record(v, v.holds);
  }
  r.json["results"] = std::move(results);
  return ok ? kOk : kFails;
}

int query(const Options& o, const bpkb::KnowledgeBase& kb, Report& r, Json& query_times, Timer& timer) {
  bpkb::Retriever retriever(kb.context(), o.budget);
  Json answers = Json::array();
  bool ok = true;
  for (const auto& text : bpkb::split_queries(text_or_file(o.query))) {
    auto ast = bpkb::parse_query(text);
    auto result = bpkb::run_query(ast, retriever);
    std::string printed = bpkb::to_string(ast);
    Json j = bpkb::to_json(result);
    j["query"] = printed;
    answers.push_back(std::move(j));
    r.text << printed << "\n" << bpkb::to_text(result);
    if (result.columns.empty() && !result.boolean) ok = false;
    query_times.push_back({{"query", printed}, {"ms", timer.lap()}});
  }
  r.json["queries"] = std::move(answers);
  return ok ? kOk : kFails;
}

int trace_check(const Options& o, const bpkb::KnowledgeBase& kb, const std::string& process, Report& r) {
  auto trace = bpkb::parse_trace(text_or_file(o.trace));
  bool correct = bpkb::check_trace(trace, process, kb.context());
  r.json["trace"] = bpkb::to_json(trace);
  r.json["correct"] = correct;
  r.text << bpkb::to_string(trace) << ": " << (correct ? "correct" : "not a correct trace") << "\n";
  return correct ? kOk : kFails;
}

int trace_gen(const Options& o, const bpkb::KnowledgeBase& kb, const std::string& process, Report& r) {
  std::optional<bpkb::OrderConstraint> cond;
  if (!o.before.empty()) {
    auto comma = o.before.find(',');
    if (comma == std::string::npos) throw bpkb::InputError("--before expects 'a,b'");
    cond = bpkb::OrderConstraint{bpkb::trim(o.before.substr(0, comma)), bpkb::trim(o.before.substr(comma + 1))};
  }
  auto traces = bpkb::generate_traces(process, kb.context(), o.max_len, cond);
  Json all = Json::array();
  for (const auto& t : traces) {
    all.push_back(bpkb::to_json(t));
    r.text << bpkb::to_string(t) << "\n";
  }
  r.text << "(" << traces.size() << " trace" << (traces.size() == 1 ? "" : "s") << ")\n";
  r.json["traces"] = std::move(all);
  return kOk;
}

void emit(const Options& o, const Report& r) {
  std::string body = o.format == "json" ? r.json.dump(2) + "\n" : r.text.str();
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw bpkb::InputError("cannot write '" + o.out + "'");
  file << body;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--bps", o.sources.bps, "process fact file (.bps)");
  cmd->add_option("--bpmn", o.sources.bpmn, "BPMN 2.0 XML file");
  cmd->add_option("--triples", o.sources.ontology, "ontology file (triples or DL shorthand)");
  cmd->add_option("--ann", o.sources.annotations, "annotation file (.ann)");
  cmd->add_option("--budget", o.budget, "maximum number of states to explore")->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", o.out, "write the report to this file");
  cmd->add_option("--process", o.process, "top-level process (needed when there are several)");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("BPKB_BUDGET")) {
    try {
      o.budget = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "error: BPKB_BUDGET must be a positive integer\n";
      return kInputError;
    }
  }
  CLI::App app{"Reasoning over semantically annotated business process schemas"};
  app.require_subcommand(1);
  auto* validate_cmd = app.add_subcommand("validate", "check well-formedness and annotations");
  auto* space_cmd = app.add_subcommand("space", "build the state space");
  auto* verify_cmd = app.add_subcommand("verify", "check the standard behavioral properties");
  auto* query_cmd = app.add_subcommand("query", "evaluate SELECT-WHERE queries");
  auto* check_cmd = app.add_subcommand("trace-check", "check a trace against the process");
  auto* gen_cmd = app.add_subcommand("trace-gen", "generate correct traces");
  for (auto* cmd : {validate_cmd, space_cmd, verify_cmd, query_cmd, check_cmd, gen_cmd}) add_common(cmd, o);
  space_cmd->add_flag("--dump", o.dump, "print every state and edge");
  verify_cmd->add_option("--rule", o.rules, "noncompliance pattern to check (CTL formula)");
  query_cmd->add_option("query", o.query, "query text, or a file of queries separated by ';' lines")->required();
  check_cmd->add_option("trace", o.trace, "trace text or file, e.g. [complete(s), complete(e)]")->required();
  gen_cmd->add_option("--max-len", o.max_len, "maximum trace length")->required();
  gen_cmd->add_option("--before", o.before, "only traces completing a before b: 'a,b'");
  CLI11_PARSE(app, argc, argv);

  Report r;
  Timer timer;
  Json timing = Json::object();
  Json query_times = Json::array();
  int code = kOk;
  std::string command = app.get_subcommands().front()->get_name();
  r.json["command"] = command;
  try {
    if (o.budget == 0) throw bpkb::InputError("the state budget must be positive");
    auto kb = bpkb::KnowledgeBase::load(o.sources);
    timing["setup"] = timer.lap();
    if (command == "validate") {
      code = validate(o, kb, r);
    } else if (command == "query") {
      code = query(o, kb, r, query_times, timer);
    } else {
      std::string process = pick_process(kb, o.process);
      r.json["process"] = process;
      if (command == "trace-check") {
        code = trace_check(o, kb, process, r);
      } else if (command == "trace-gen") {
        code = trace_gen(o, kb, process, r);
      } else {
        bpkb::Analysis an(process, kb.context(), o.budget);
        timing["space"] = timer.lap();
        if (command == "space") {
          code = space(o, an, r);
        } else {
          r.json["space"] = bpkb::summary_json(an.graph());
          code = verify(o, an, r, query_times, timer);
        }
      }
    }
  } catch (const bpkb::Error& e) {
    code = kInputError;
    r.json["error"] = e.what();
    r.text << "error: " << e.what() << "\n";
  }
  if (!query_times.empty()) timing["queries"] = query_times;
  r.json["timing_ms"] = timing;
  r.json["exit_code"] = code;
  r.json["status"] = code == kOk ? "ok" : code == kFails ? "fails" : "error";
  if (code != kInputError) {
    r.text << "timing:";
    for (const auto& [phase, value] : timing.items()) {
      if (value.is_number()) r.text << " " << phase << " " << fixed(value.get<double>()) << " ms";
    }
    for (const auto& q : query_times) r.text << "\n  " << q["query"].get<std::string>() << ": " << fixed(q["ms"].get<double>()) << " ms";
    r.text << "\n";
  }
  try {
    emit(o, r);
  } catch (const bpkb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (code == kInputError && o.format == "text" && !o.out.empty()) std::cerr << r.text.str();
  return code;
}

#include <algorithm>
#include <fstream>

#include <gtest/gtest.h>

#include "bpkb/bpmn.h"
#include "bpkb/error.h"
#include "bpkb/knowledge_base.h"
#include "bpkb/report.h"
#include "bpkb/services.h"
#include "support/fixtures.h"

namespace bpkb {
namespace {

const char* const kTwoNode = R"(<?xml version="1.0"?>
<definitions xmlns="http://www.omg.org/spec/BPMN/20100524/MODEL">
  <process id="p">
    <startEvent id="s"/>
    <endEvent id="e"/>
    <sequenceFlow id="f" sourceRef="s" targetRef="e"/>
  </process>
</definitions>
)";

TEST(ImportBpmn, TwoNodeProcess) {
  auto schema = import_bpmn_xml(kTwoNode);
  auto expected = parse_process_facts(testing::kMinimalProcess);
  EXPECT_EQ(schema.to_facts(), expected.to_facts());
  EXPECT_TRUE(well_formedness(schema).ok());
}

TEST(ImportBpmn, EventBasedGatewayIsUnsupported) {
  std::string xml = kTwoNode;
  xml.replace(xml.find("<endEvent"), 0, "<eventBasedGateway id=\"g\"/>\n    ");
  try {
    import_bpmn_xml(xml);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("eventBasedGateway"), std::string::npos);
  }
  std::string complex = kTwoNode;
  complex.replace(complex.find("<endEvent"), 0, "<complexGateway id=\"g\"/>\n    ");
  EXPECT_THROW(import_bpmn_xml(complex), InputError);
}

TEST(ImportBpmn, MalformedXml) {
  EXPECT_THROW(import_bpmn_xml("<definitions><process id=\"p\">"), ParseError);
  EXPECT_THROW(import_bpmn_xml("<definitions/>"), InputError);
}

TEST(ImportBpmn, SubProcessBoundaryEventsLanesAndData) {
  auto schema = import_bpmn_xml(testing::read_data("bpmn/approval.bpmn"));
  ASSERT_NE(schema.top_level("approval"), nullptr);
  EXPECT_EQ(schema.top_level("approval")->start, "start");
  ASSERT_NE(schema.compound("handling"), nullptr);
  EXPECT_EQ(schema.compound("handling")->start, "h_start");
  EXPECT_TRUE(schema.has_seq("h_start", "archive", "handling"));
  ASSERT_EQ(schema.exceptions().size(), 1u);
  EXPECT_EQ(schema.exceptions()[0].event, "timeout");
  EXPECT_EQ(schema.exceptions()[0].activity, "handling");
  EXPECT_TRUE(schema.has_kind("timeout", ElementKind::kIntermediateEvent));
  EXPECT_TRUE(schema.has_kind("decide", ElementKind::kExclusiveBranch));
  EXPECT_TRUE(schema.has_kind("join", ElementKind::kExclusiveMerge));
  EXPECT_TRUE(schema.has_kind("request", ElementKind::kItem));
  EXPECT_EQ(schema.outputs_of("review", "approval"), std::vector<ElementId>{"request"});
  EXPECT_EQ(schema.inputs_of("approve", "approval"), std::vector<ElementId>{"request"});
  EXPECT_TRUE(schema.has_kind("clerk", ElementKind::kParticipant));
  auto assigned = schema.assignments();
  EXPECT_TRUE(std::find(assigned.begin(), assigned.end(), ActivityLink{"approve", "manager", "approval"}) !=
              assigned.end());
  auto r = well_formedness(schema);
  for (const auto& v : r.violations) ADD_FAILURE() << v.constraint << " " << v.message;
}

TEST(ImportBpmn, ImportedModelEnacts) {
  KnowledgeBaseSources sources;
  sources.bpmn.push_back(testing::data_path("bpmn/approval.bpmn"));
  auto kb = KnowledgeBase::load(sources);
  Analysis an("approval", kb.context());
  EXPECT_TRUE(option_to_complete(an).holds);
  // The reviewer writes the request before approval can begin.
  EXPECT_TRUE(non_executable_activities(an).empty());
}

TEST(ImportBpmn, ViolationsAreReportedNotThrown) {
  std::string xml = kTwoNode;
  xml.replace(xml.find("<sequenceFlow"), 0, "<task id=\"orphan\"/>\n    ");
  auto r = well_formedness(import_bpmn_xml(xml));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].constraint, "2");
}

TEST(KnowledgeBase, LoadsHandleOrder) {
  auto kb = testing::handle_order();
  EXPECT_EQ(kb.top_level_processes(), std::vector<ElementId>{"ho"});
  EXPECT_TRUE(kb.structure().ok());
  EXPECT_TRUE(kb.annotation_report().ok());
  EXPECT_FALSE(kb.context().constants().empty());
}

TEST(KnowledgeBase, Errors) {
  KnowledgeBaseSources missing;
  missing.bps.push_back("/nonexistent/file.bps");
  EXPECT_THROW(KnowledgeBase::load(missing), InputError);
  EXPECT_THROW(KnowledgeBase::from_text("seq(a, b)."), ParseError);
  EXPECT_THROW(KnowledgeBase::from_text(""), InputError);
  try {
    KnowledgeBaseSources bad;
    bad.bps.push_back(testing::data_path("handle_order/handle_order.bps"));
    bad.annotations.push_back(testing::data_path("handle_order/queries.qbp"));
    KnowledgeBase::load(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("queries.qbp"), std::string::npos) << e.what();
  }
}

TEST(Report, VerdictJson) {
  auto kb = KnowledgeBase::from_text(testing::kOneTaskProcess);
  Analysis an("p", kb.context());
  auto v = compliance(an, parse_formula("EF(en(A, p))"));
  v.property = "rule";
  auto j = to_json(v, an.graph());
  EXPECT_EQ(j["property"], "rule");
  EXPECT_EQ(j["holds"], false);
  EXPECT_EQ(j["bindings"][0]["A"], "t");
  ASSERT_TRUE(j["witness"].is_array());
  EXPECT_EQ(j["witness"][0]["action"], "complete(s)");
  auto text = to_text(v, an.graph());
  EXPECT_NE(text.find("does not hold"), std::string::npos);
  EXPECT_NE(text.find("?A=t"), std::string::npos);
}

TEST(Report, QueryResultAndTrace) {
  QueryResult r;
  r.boolean = true;
  r.columns = {"a"};
  r.rows = {{"delivering"}};
  auto j = to_json(r);
  EXPECT_EQ(j["rows"][0][0], "delivering");
  EXPECT_NE(to_text(r).find("(1 row)"), std::string::npos);
  EXPECT_EQ(to_json(parse_trace("[complete(s), begin(t)]")), Json::parse(R"j(["complete(s)","begin(t)"])j"));
}

TEST(Report, SummaryIsDeterministic) {
  auto kb = testing::handle_order();
  auto a = summary_json(state_space("ho", kb.context()));
  auto b = summary_json(state_space("ho", kb.context()));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_GT(a["states"].get<int>(), 10);
}

}  // namespace
}  // namespace bpkb

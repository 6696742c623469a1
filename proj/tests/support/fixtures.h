#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "bpkb/ctl.h"
#include "bpkb/fluent.h"
#include "bpkb/knowledge_base.h"

namespace bpkb {

// Readable gtest output for the library's value types.
void PrintTo(const Fluent& f, std::ostream* os);
void PrintTo(const State& s, std::ostream* os);
void PrintTo(const Action& a, std::ostream* os);
void PrintTo(const Formula& f, std::ostream* os);

}  // namespace bpkb

namespace bpkb::testing {

std::string data_path(const std::string& relative);
std::string read_data(const std::string& relative);

// The Handle Order knowledge base shipped under data/handle_order.
KnowledgeBase handle_order();
// The queries of data/handle_order/queries.qbp, in file order: q1, q2, q3
// and the noncompliance query.
std::vector<std::string> handle_order_queries();

// s -> e.
extern const char* const kMinimalProcess;
// s -> t -> e.
extern const char* const kOneTaskProcess;

// s -> ib, ib -> a | b, a | b -> im, im -> e with inclusive gateways.
extern const char* const kInclusiveProcess;

// s -> pb, `arms` parallel arms of `tasks_per_arm` tasks each, pm -> e.
std::string parallel_diamond(std::size_t arms, std::size_t tasks_per_arm);

// A safe process built from `segments` blocks in sequence. Each block is a
// parallel branch whose first arm holds an exclusive choice between two
// runs of two tasks and whose second arm is a run of `run_length` tasks.
// With the defaults it has 87 flow elements, 7 exclusive and 7 parallel
// gateway pairs.
std::string synthetic_process(std::size_t segments = 7, std::size_t run_length = 4);

}  // namespace bpkb::testing

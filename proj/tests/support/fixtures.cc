#include "support/fixtures.h"

#include <sstream>

#include "bpkb/query.h"

namespace bpkb {

void PrintTo(const Fluent& f, std::ostream* os) { *os << to_string(f); }
void PrintTo(const State& s, std::ostream* os) { *os << to_string(s); }
void PrintTo(const Action& a, std::ostream* os) { *os << to_string(a); }
void PrintTo(const Formula& f, std::ostream* os) { *os << to_string(f); }

}  // namespace bpkb

namespace bpkb::testing {

const char* const kMinimalProcess =
    "bp(p, s, e).\n"
    "start_event(s).\n"
    "end_event(e).\n"
    "seq(s, e, p).\n";

const char* const kOneTaskProcess =
    "bp(p, s, e).\n"
    "start_event(s).\n"
    "end_event(e).\n"
    "task(t).\n"
    "seq(s, t, p).\n"
    "seq(t, e, p).\n";

const char* const kInclusiveProcess =
    "bp(p, s, e).\nstart_event(s).\nend_event(e).\ninc_branch(ib).\ninc_merge(im).\n"
    "task(a).\ntask(b).\nseq(s, ib, p).\nseq(ib, a, p).\nseq(ib, b, p).\n"
    "seq(a, im, p).\nseq(b, im, p).\nseq(im, e, p).\n";

std::string data_path(const std::string& relative) { return std::string(BPKB_DATA_DIR) + "/" + relative; }

std::string read_data(const std::string& relative) { return read_file(data_path(relative)); }

KnowledgeBase handle_order() {
  KnowledgeBaseSources sources;
  sources.bps.push_back(data_path("handle_order/handle_order.bps"));
  sources.ontology.push_back(data_path("handle_order/reference.dl"));
  sources.annotations.push_back(data_path("handle_order/handle_order.ann"));
  return KnowledgeBase::load(sources);
}

std::vector<std::string> handle_order_queries() {
  return split_queries(read_data("handle_order/queries.qbp"));
}

std::string parallel_diamond(std::size_t arms, std::size_t tasks_per_arm) {
  std::ostringstream out;
  out << "bp(p, s, e).\nstart_event(s).\nend_event(e).\n"
      << "par_branch(pb).\npar_merge(pm).\nseq(s, pb, p).\nseq(pm, e, p).\n";
  for (std::size_t a = 0; a < arms; ++a) {
    std::string prev = "pb";
    for (std::size_t k = 0; k < tasks_per_arm; ++k) {
      std::string t = "t" + std::to_string(a) + "_" + std::to_string(k);
      out << "task(" << t << ").\nseq(" << prev << ", " << t << ", p).\n";
      prev = t;
    }
    out << "seq(" << prev << ", pm, p).\n";
  }
  return out.str();
}

std::string synthetic_process(std::size_t segments, std::size_t run_length) {
  std::ostringstream out;
  out << "bp(p, s, e).\nstart_event(s).\nend_event(e).\ntask(t0).\nseq(s, t0, p).\n";
  std::string prev = "t0";
  auto run = [&](const std::string& from, const std::string& to, const std::string& prefix,
                 std::size_t n) {
    std::string last = from;
    for (std::size_t k = 0; k < n; ++k) {
      std::string t = prefix + std::to_string(k);
      out << "task(" << t << ").\nseq(" << last << ", " << t << ", p).\n";
      last = t;
    }
    out << "seq(" << last << ", " << to << ", p).\n";
  };
  for (std::size_t i = 0; i < segments; ++i) {
    std::string n = std::to_string(i);
    std::string pb = "pb" + n, pm = "pm" + n, xb = "xb" + n, xm = "xm" + n;
    out << "par_branch(" << pb << ").\npar_merge(" << pm << ").\n"
        << "exc_branch(" << xb << ").\nexc_merge(" << xm << ").\n"
        << "seq(" << prev << ", " << pb << ", p).\nseq(" << pb << ", " << xb << ", p).\n"
        << "seq(" << xm << ", " << pm << ", p).\n";
    run(xb, xm, "a" + n + "_", 2);
    run(xb, xm, "b" + n + "_", 2);
    run(pb, pm, "c" + n + "_", run_length);
    prev = pm;
  }
  out << "seq(" << prev << ", e, p).\n";
  return out.str();
}

}  // namespace bpkb::testing

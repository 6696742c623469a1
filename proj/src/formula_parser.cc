#include <algorithm>
#include <cctype>

#include "bpkb/ctl.h"
#include "bpkb/text.h"

namespace bpkb {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

class FormulaParser {
 public:
  FormulaParser(Scanner& in, bool lenient) : in_(in), lenient_(lenient) {}

  Formula expression() {
    Formula f = conjunction();
    while (keyword("OR")) f = Formula::disjunction(std::move(f), conjunction());
    return f;
  }

 private:
  bool keyword(std::string_view upper) {
    std::string low = lower(std::string(upper));
    return in_.consume_word(upper) || in_.consume_word(low);
  }

  Formula conjunction() {
    Formula f = unary();
    while (keyword("AND")) f = Formula::conjunction(std::move(f), unary());
    return f;
  }

  void close() {
    if (in_.consume(')')) return;
    char c = in_.peek();
    if (lenient_ && (c == '|' || c == ']')) return;
    in_.expect(')');
  }

  Formula group() {
    Formula f = expression();
    close();
    return f;
  }

  // `and(f, g, ...)` / `or(...)`, folded to the right.
  Formula nary(bool is_and) {
    std::vector<Formula> parts;
    do {
      parts.push_back(expression());
    } while (in_.consume(','));
    close();
    if (parts.size() < 2) in_.fail(std::string(is_and ? "and" : "or") + "(...) needs two operands");
    Formula out = std::move(parts.back());
    for (std::size_t i = parts.size() - 1; i-- > 0;) {
      out = is_and ? Formula::conjunction(std::move(parts[i]), std::move(out))
                   : Formula::disjunction(std::move(parts[i]), std::move(out));
    }
    return out;
  }

  Formula unary() {
    if (in_.consume('(')) return group();
    if (!in_.at_identifier()) {
      if (in_.at_end()) in_.fail("expected a formula but input ended");
      in_.fail(std::string("expected a formula but found '") + in_.peek() + "'");
    }
    std::size_t line = in_.line();
    std::size_t column = in_.column();
    std::string word = in_.identifier();
    std::string op = lower(word);
    if (op == "true") return Formula::truth();
    if (op == "false") return Formula::falsity();
    if (op == "not") return Formula::negation(unary());
    if (op == "ex") return Formula::ex(unary());
    if (op == "eg") return Formula::eg(unary());
    if (op == "ef") return Formula::ef(unary());
    if (op == "ag") return Formula::ag(unary());
    if (op == "eu") {
      in_.expect('(');
      Formula a = expression();
      in_.expect(',');
      Formula b = expression();
      close();
      return Formula::eu(std::move(a), std::move(b));
    }
    if ((op == "and" || op == "or") && in_.consume('(')) return nary(op == "and");
    if (word == "final") {
      in_.expect('(');
      in_.skip_space();
      Term p = in_.term(true, true);
      in_.expect(')');
      return Formula::final_of(std::move(p));
    }
    if (is_fluent_functor(word)) return Formula::fluent(parse_fluent_arguments(in_, word, true));
    throw ParseError("unknown formula '" + word + "'", line, column);
  }

  Scanner& in_;
  bool lenient_;
};

}  // namespace

Formula parse_formula(Scanner& in, bool lenient_close) { return FormulaParser(in, lenient_close).expression(); }

Formula parse_formula(std::string_view text) {
  Scanner in(text, 1, false);
  Formula f = parse_formula(in, false);
  if (!in.at_end()) in.fail("unexpected text after formula");
  return f;
}

}  // namespace bpkb

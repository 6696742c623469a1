#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bpkb/error.h"
#include "bpkb/term.h"

namespace bpkb {

// Small hand-written lexer shared by the line-based input formats.
// `%` starts a comment that runs to the end of the line when comments are
// enabled.
class Scanner {
 public:
  explicit Scanner(std::string_view text, std::size_t first_line = 1, bool percent_comments = true);

  void skip_space();
  bool at_end();
  char peek();
  bool consume(char c);
  void expect(char c);
  // Matches `word` as a whole identifier (not a prefix of a longer one).
  bool consume_word(std::string_view word);
  bool consume_symbol(std::string_view symbol);

  bool at_identifier();
  std::string identifier();
  std::string rest();

  // Parses `?x`, a quoted constant, an `<iri>` or a bare identifier.
  // Bare identifiers with an uppercase first letter and no prefix colon are
  // variables when `uppercase_variables` is set, and rejected when
  // `allow_variables` is false.
  Term term(bool allow_variables, bool uppercase_variables);

  [[noreturn]] void fail(const std::string& message) const;

  std::size_t line() const { return line_; }
  std::size_t column() const { return pos_ - line_start_ + 1; }
  std::size_t position() const { return pos_; }

 private:
  void advance();

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t line_start_ = 0;
  bool percent_comments_;
};

bool is_identifier_char(char c);

// Splits `text` into lines, keeping 1-based line numbers, dropping `%`
// comments and surrounding whitespace; blank lines are skipped.
struct SourceLine {
  std::size_t number;
  std::string text;
};
std::vector<SourceLine> logical_lines(std::string_view text, bool percent_comments = true);

std::string trim(std::string_view s);

}  // namespace bpkb

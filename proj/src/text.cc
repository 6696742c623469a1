#include "bpkb/text.h"

#include <cctype>

namespace bpkb {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column,
                       const std::string& source)
    : Error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) +
            (column ? ":" + std::to_string(column) : "") + ": " + message),
      source_(source),
      line_(line),
      column_(column),
      detail_(message) {}

BudgetExceeded::BudgetExceeded(std::size_t budget)
    : Error("state budget of " + std::to_string(budget) +
            " states exceeded (the schema may be unsafe)"),
      budget_(budget) {}

Term apply(const Substitution& theta, const Term& t) {
  if (!t.is_variable()) return t;
  auto it = theta.find(t.name);
  return it == theta.end() ? t : Term::constant(it->second);
}

bool is_identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' ||
         c == '#' || c == '/' || c == '.';
}

bool is_bare_constant(const std::string& name) {
  if (name.empty()) return false;
  if (name.front() == '<' && name.back() == '>') return true;
  unsigned char first = static_cast<unsigned char>(name.front());
  if (!(std::islower(first) || std::isdigit(first))) return false;
  for (char c : name) {
    if (!is_identifier_char(c)) return false;
  }
  return name.back() != '.';
}

std::string quote_constant(const std::string& name) {
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

std::string to_string(const Term& t) {
  if (t.is_variable()) return "?" + t.name;
  return is_bare_constant(t.name) ? t.name : quote_constant(t.name);
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<SourceLine> logical_lines(std::string_view text, bool percent_comments) {
  std::vector<SourceLine> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (percent_comments) {
      // A `%` inside a quoted constant does not start a comment.
      bool quoted = false;
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\\' && quoted) {
          ++i;
        } else if (raw[i] == '\'') {
          quoted = !quoted;
        } else if (raw[i] == '%' && !quoted) {
          raw = raw.substr(0, i);
          break;
        }
      }
    }
    std::string line = trim(raw);
    if (!line.empty()) lines.push_back({number, std::move(line)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

Scanner::Scanner(std::string_view text, std::size_t first_line, bool percent_comments)
    : text_(text), line_(first_line), percent_comments_(percent_comments) {}

void Scanner::advance() {
  if (pos_ < text_.size() && text_[pos_] == '\n') {
    ++line_;
    line_start_ = pos_ + 1;
  }
  ++pos_;
}

void Scanner::skip_space() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (percent_comments_ && c == '%') {
      while (pos_ < text_.size() && text_[pos_] != '\n') advance();
    } else {
      break;
    }
  }
}

bool Scanner::at_end() {
  skip_space();
  return pos_ >= text_.size();
}

char Scanner::peek() {
  skip_space();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Scanner::consume(char c) {
  if (peek() != c) return false;
  advance();
  return true;
}

void Scanner::expect(char c) {
  if (!consume(c)) {
    if (at_end()) fail(std::string("expected '") + c + "' but input ended");
    fail(std::string("expected '") + c + "' but found '" + text_[pos_] + "'");
  }
}

bool Scanner::consume_symbol(std::string_view symbol) {
  skip_space();
  if (text_.substr(pos_, symbol.size()) != symbol) return false;
  for (std::size_t i = 0; i < symbol.size(); ++i) advance();
  return true;
}

bool Scanner::consume_word(std::string_view word) {
  skip_space();
  if (text_.substr(pos_, word.size()) != word) return false;
  std::size_t after = pos_ + word.size();
  if (after < text_.size() && is_identifier_char(text_[after]) && text_[after] != '.') return false;
  for (std::size_t i = 0; i < word.size(); ++i) advance();
  return true;
}

bool Scanner::at_identifier() {
  char c = peek();
  return c != '.' && c != '-' && c != '\0' && is_identifier_char(c);
}

std::string Scanner::identifier() {
  if (!at_identifier()) {
    if (at_end()) fail("expected an identifier but input ended");
    fail(std::string("expected an identifier but found '") + text_[pos_] + "'");
  }
  std::size_t begin = pos_;
  while (pos_ < text_.size() && is_identifier_char(text_[pos_])) {
    // A dot only continues an identifier when another identifier character
    // follows it, so that `o .` and `fact(x).` terminate cleanly.
    if (text_[pos_] == '.' &&
        (pos_ + 1 >= text_.size() || !is_identifier_char(text_[pos_ + 1]) || text_[pos_ + 1] == '.')) {
      break;
    }
    advance();
  }
  return std::string(text_.substr(begin, pos_ - begin));
}

std::string Scanner::rest() {
  skip_space();
  std::string out(text_.substr(pos_));
  while (pos_ < text_.size()) advance();
  return out;
}

Term Scanner::term(bool allow_variables, bool uppercase_variables) {
  char c = peek();
  if (c == '?') {
    advance();
    if (!allow_variables) fail("variables are not permitted here");
    return Term::variable(identifier());
  }
  if (c == '\'') {
    advance();
    std::string name;
    while (pos_ < text_.size() && text_[pos_] != '\'') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
      name += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size()) fail("unterminated quoted constant");
    advance();
    if (name.empty()) fail("empty quoted constant");
    return Term::constant(std::move(name));
  }
  if (c == '<') {
    std::size_t begin = pos_;
    while (pos_ < text_.size() && text_[pos_] != '>' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    if (pos_ >= text_.size() || text_[pos_] != '>') fail("unterminated IRI");
    advance();
    return Term::constant(std::string(text_.substr(begin, pos_ - begin)));
  }
  std::size_t col = column();
  std::string name = identifier();
  if (std::isupper(static_cast<unsigned char>(name.front())) && name.find(':') == std::string::npos) {
    if (uppercase_variables && allow_variables) return Term::variable(std::move(name));
    if (!allow_variables) {
      throw ParseError("'" + name + "' looks like a variable; variables are not permitted here", line_, col);
    }
  }
  return Term::constant(std::move(name));
}

void Scanner::fail(const std::string& message) const {
  throw ParseError(message, line_, pos_ - line_start_ + 1);
}

}  // namespace bpkb

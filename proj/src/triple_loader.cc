#include <cctype>
#include <memory>

#include "bpkb/error.h"
#include "bpkb/ontology.h"
#include "bpkb/text.h"

namespace bpkb {
namespace {

// ---- triple syntax -------------------------------------------------------

// Shorthands such as `a` or `subClassOf` are only read as vocabulary in
// predicate position.
std::string expand(const TripleStore& store, const std::string& token, bool predicate = false) {
  if (token.size() > 2 && token.front() == '<' && token.back() == '>') {
    std::string iri = token.substr(1, token.size() - 2);
    for (const auto& [prefix, ns] : store.prefixes()) {
      if (!ns.empty() && iri.rfind(ns, 0) == 0 && iri.size() > ns.size()) {
        return prefix + ":" + iri.substr(ns.size());
      }
    }
    return token;
  }
  return predicate ? canonical_term(token) : token;
}

std::vector<std::string> split_triple_line(const SourceLine& line) {
  std::vector<std::string> out;
  const std::string& s = line.text;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')') {
      out.emplace_back(1, c);
      ++i;
    } else if (c == '<' || c == '"') {
      char close = c == '<' ? '>' : '"';
      std::size_t end = s.find(close, i + 1);
      if (end == std::string::npos) {
        throw ParseError(std::string("unterminated ") + (c == '<' ? "IRI" : "literal"), line.number, i + 1);
      }
      out.push_back(s.substr(i, end - i + 1));
      i = end + 1;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' &&
             s[j] != ')') {
        ++j;
      }
      out.push_back(s.substr(i, j - i));
      i = j;
    }
  }
  // A final '.' may be glued to the last term.
  if (!out.empty() && out.back().size() > 1 && out.back().back() == '.' &&
      out.back().front() != '"') {
    out.back().pop_back();
    out.emplace_back(".");
  }
  return out;
}

void load_triple_lines(TripleStore& store, std::string_view text) {
  for (const auto& line : logical_lines(text, false)) {
    if (line.text[0] == '#' || line.text[0] == '%') continue;
    std::vector<std::string> tok = split_triple_line(line);
    if (tok.empty()) continue;
    if (tok[0] == "@prefix") {
      if (tok.size() != 4 || tok[3] != "." || tok[1].back() != ':' || tok[2].front() != '<') {
        throw ParseError("expected '@prefix name: <iri> .'", line.number, 1);
      }
      store.prefixes()[tok[1].substr(0, tok[1].size() - 1)] = tok[2].substr(1, tok[2].size() - 2);
      continue;
    }
    if (tok.back() != ".") throw ParseError("triple must end with '.'", line.number, line.text.size());
    tok.pop_back();
    if (tok.size() < 3) throw ParseError("expected 'subject predicate object .'", line.number, 1);
    std::string subject = expand(store, tok[0]);
    std::string predicate = expand(store, tok[1], true);
    if (is_vocabulary_name(predicate) && !is_supported_vocabulary(predicate)) {
      throw ParseError("unknown vocabulary predicate '" + predicate + "'", line.number, 1);
    }
    if (tok[2] == "(") {
      if (tok.back() != ")") throw ParseError("unterminated term list", line.number, line.text.size());
      TermList list;
      for (std::size_t i = 3; i + 1 < tok.size(); ++i) list.push_back(expand(store, tok[i]));
      if (predicate == vocab::kIntersectionOf && list.size() != 2) {
        throw ParseError("intersectionOf takes exactly two classes", line.number, 1);
      }
      store.add(Triple(subject, predicate, list));
    } else {
      if (tok.size() != 3) throw ParseError("too many terms in triple", line.number, 1);
      store.add(Triple(subject, predicate, expand(store, tok[2])));
    }
  }
}

// ---- DL shorthand ----------------------------------------------------------

struct Concept {
  enum class Kind { kNamed, kAnd, kSome, kNot, kTop, kBottom };
  Kind kind = Kind::kNamed;
  std::string name;  // named class, or the role for kSome
  bool inverse = false;
  std::vector<Concept> parts;  // kAnd operands; kSome/kNot operand (optional)
};

std::string replace_symbols(std::string_view text) {
  static const std::pair<std::string_view, std::string_view> kSymbols[] = {
      {"⊑", " subClassOf "}, {"⊓", " and "},    {"∃", " some "},
      {"¬", " not "},        {"⊥", " Nothing "}, {"≡", " equivalentClass "},
      {"⁻", "^-"},           {"⊤", " Thing "},
  };
  std::string out(text);
  for (const auto& [from, to] : kSymbols) {
    std::size_t pos = 0;
    while ((pos = out.find(from, pos)) != std::string::npos) {
      out.replace(pos, from.size(), to);
      pos += to.size();
    }
  }
  return out;
}

class DlLine {
 public:
  DlLine(TripleStore& store, const SourceLine& line) : store_(store), number_(line.number) {
    tokenize(line.text);
  }
  DlLine(TripleStore& store, std::string_view text) : store_(store), number_(1) { tokenize(text); }

  void axiom() {
    const std::string& first = peek();
    if (first == "@default") {
      next();
      store_.default_prefix() = name_token();
      return finish();
    }
    if (first == "class" || first == "property") {
      next();
      auto type = std::string(first == "class" ? vocab::kClass : vocab::kObjectProperty);
      if (at_end()) fail("expected a name");
      while (!at_end()) add(qualify(name_token()), std::string(vocab::kType), type);
      return;
    }
    if (first == "transitive") {
      next();
      add(qualify(name_token()), std::string(vocab::kType), std::string(vocab::kTransitiveProperty));
      return finish();
    }
    if (pos_ + 1 < tokens_.size()) {
      const std::string& op = tokens_[pos_ + 1];
      if (op == "subPropertyOf" || op == "inverseOf" || op == "domain" || op == "range") {
        std::string p = qualify(name_token());
        next();
        std::string predicate = canonical_term(op);
        if (op == "domain" || op == "range") {
          add(p, predicate, normalize(concept_expr()));
        } else {
          add(p, predicate, qualify(name_token()));
        }
        return finish();
      }
    }
    Concept lhs = concept_expr();
    std::string op = next();
    if (op != "subClassOf" && op != "equivalentClass" && op != "disjointWith") {
      fail("expected subClassOf, equivalentClass or disjointWith, found '" + op + "'");
    }
    Concept rhs = concept_expr();
    finish();
    if (op == "disjointWith") {
      add(normalize(lhs), std::string(vocab::kDisjointWith), normalize(rhs));
    } else if (op == "equivalentClass") {
      add(normalize(lhs), std::string(vocab::kEquivalentClass), normalize(rhs));
    } else {
      subclass(lhs, rhs);
    }
  }

  std::string standalone_concept() {
    Concept c = concept_expr();
    finish();
    return normalize(c);
  }

 private:
  void tokenize(std::string_view raw) {
    std::string text = replace_symbols(raw);
    std::size_t i = 0;
    while (i < text.size()) {
      char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '(' || c == ')' || c == '.') {
        tokens_.emplace_back(1, c);
        columns_.push_back(i + 1);
        ++i;
      } else if (c == '^' && i + 1 < text.size() && text[i + 1] == '-') {
        tokens_.emplace_back("^-");
        columns_.push_back(i + 1);
        i += 2;
      } else if (c == '<') {
        std::size_t end = text.find('>', i);
        if (end == std::string::npos) throw ParseError("unterminated IRI", number_, i + 1);
        tokens_.push_back(text.substr(i, end - i + 1));
        columns_.push_back(i + 1);
        i = end + 1;
      } else if (c == '@' || is_identifier_char(c)) {
        std::size_t j = i + 1;
        while (j < text.size() && is_identifier_char(text[j]) && text[j] != '.') ++j;
        tokens_.push_back(text.substr(i, j - i));
        columns_.push_back(i + 1);
        i = j;
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", number_, i + 1);
      }
    }
    if (tokens_.empty()) throw ParseError("empty axiom", number_, 1);
  }

  bool at_end() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const {
    static const std::string kEnd;
    return at_end() ? kEnd : tokens_[pos_];
  }
  std::string next() {
    if (at_end()) fail("unexpected end of axiom");
    return tokens_[pos_++];
  }
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t col = pos_ < columns_.size() ? columns_[pos_] : 0;
    throw ParseError(message, number_, col);
  }
  void finish() {
    if (!at_end()) fail("unexpected '" + peek() + "'");
  }

  static bool is_keyword(const std::string& t) {
    return t == "and" || t == "some" || t == "not" || t == "subClassOf" || t == "equivalentClass" ||
           t == "disjointWith" || t == "(" || t == ")" || t == "." || t == "^-";
  }

  std::string name_token() {
    std::string t = next();
    if (is_keyword(t)) {
      --pos_;
      fail("expected a name, found '" + t + "'");
    }
    return t;
  }

  std::string qualify(const std::string& name) const {
    if (name.front() == '<') return expand(store_, name);
    std::string canon = canonical_term(name);
    if (canon != name) return canon;
    if (name == "Thing") return std::string(vocab::kThing);
    if (name == "Nothing") return std::string(vocab::kNothing);
    if (store_.default_prefix().empty() || name.find(':') != std::string::npos) return name;
    return store_.default_prefix() + ":" + name;
  }

  Concept concept_expr() {
    Concept first = unary();
    if (peek() != "and") return first;
    Concept conj;
    conj.kind = Concept::Kind::kAnd;
    conj.parts.push_back(std::move(first));
    while (peek() == "and") {
      next();
      conj.parts.push_back(unary());
    }
    return conj;
  }

  Concept unary() {
    std::string t = next();
    Concept c;
    if (t == "(") {
      c = concept_expr();
      if (next() != ")") {
        --pos_;
        fail("expected ')'");
      }
      return c;
    }
    if (t == "not") {
      c.kind = Concept::Kind::kNot;
      c.parts.push_back(unary());
      return c;
    }
    if (t == "some") {
      c.kind = Concept::Kind::kSome;
      c.name = qualify(name_token());
      if (peek() == "^-") {
        next();
        c.inverse = true;
      }
      if (peek() == ".") {
        next();
        c.parts.push_back(unary());
      }
      return c;
    }
    if (is_keyword(t)) {
      --pos_;
      fail("expected a concept, found '" + t + "'");
    }
    std::string name = qualify(t);
    if (name == vocab::kThing) c.kind = Concept::Kind::kTop;
    if (name == vocab::kNothing) c.kind = Concept::Kind::kBottom;
    c.name = name;
    return c;
  }

  void add(std::string s, std::string p, std::string o) {
    store_.add(Triple(std::move(s), std::move(p), std::move(o)));
  }

  std::string shared_name(const std::string& key, std::string_view hint, bool& created) {
    auto& names = store_.expression_names();
    auto it = names.find(key);
    created = it == names.end();
    if (!created) return it->second;
    std::string name = store_.fresh_name(hint);
    names.emplace(key, name);
    return name;
  }

  std::string role(const Concept& c) {
    if (!c.inverse) return c.name;
    bool created = false;
    std::string name = shared_name("inverse(" + c.name + ")", "inv", created);
    if (created) add(name, std::string(vocab::kInverseOf), c.name);
    return name;
  }

  std::string normalize(const Concept& c) {
    switch (c.kind) {
      case Concept::Kind::kNamed:
      case Concept::Kind::kTop:
      case Concept::Kind::kBottom:
        return c.name;
      case Concept::Kind::kNot:
        fail("'not' is only supported on the right-hand side of subClassOf");
      case Concept::Kind::kSome: {
        std::string r = role(c);
        std::string filler = c.parts.empty() ? std::string(vocab::kThing) : normalize(c.parts[0]);
        bool created = false;
        std::string name = shared_name("some(" + r + "," + filler + ")", "some", created);
        if (created) {
          add(name, std::string(vocab::kSomeValuesFrom), filler);
          add(name, std::string(vocab::kOnProperty), r);
        }
        return name;
      }
      case Concept::Kind::kAnd: {
        // Binary intersections, nested to the right.
        std::string right = normalize(c.parts.back());
        for (std::size_t i = c.parts.size() - 1; i-- > 0;) {
          std::string left = normalize(c.parts[i]);
          bool created = false;
          std::string name = shared_name("and(" + left + "," + right + ")", "and", created);
          if (created) store_.add(Triple(name, std::string(vocab::kIntersectionOf), TermList{left, right}));
          right = name;
        }
        return right;
      }
    }
    return {};
  }

  void subclass(const Concept& lhs, const Concept& rhs) {
    if (rhs.kind == Concept::Kind::kNot) {
      add(normalize(lhs), std::string(vocab::kDisjointWith), normalize(rhs.parts[0]));
      return;
    }
    if (rhs.kind == Concept::Kind::kBottom && lhs.kind == Concept::Kind::kAnd && lhs.parts.size() == 2) {
      add(normalize(lhs.parts[0]), std::string(vocab::kDisjointWith), normalize(lhs.parts[1]));
      return;
    }
    bool unqualified = lhs.kind == Concept::Kind::kSome &&
                       (lhs.parts.empty() || lhs.parts[0].kind == Concept::Kind::kTop);
    if (unqualified) {
      auto predicate = lhs.inverse ? vocab::kRange : vocab::kDomain;
      add(lhs.name, std::string(predicate), normalize(rhs));
      return;
    }
    add(normalize(lhs), std::string(vocab::kSubClassOf), normalize(rhs));
  }

  TripleStore& store_;
  std::size_t number_;
  std::vector<std::string> tokens_;
  std::vector<std::size_t> columns_;
  std::size_t pos_ = 0;
};

bool looks_like_triples(std::string_view text) {
  for (const auto& line : logical_lines(text, false)) {
    const std::string& s = line.text;
    if (s[0] == '#' || s[0] == '%') continue;
    if (s.rfind("@default", 0) == 0) return false;
    if (s.rfind("@prefix", 0) == 0) return true;
    return s.back() == '.';
  }
  return true;
}

}  // namespace

void load_into(TripleStore& store, std::string_view text, OntologySyntax syntax) {
  if (syntax == OntologySyntax::kAuto) {
    syntax = looks_like_triples(text) ? OntologySyntax::kTriples : OntologySyntax::kDl;
  }
  if (syntax == OntologySyntax::kTriples) {
    load_triple_lines(store, text);
  } else {
    for (const auto& line : logical_lines(text, true)) {
      if (line.text[0] == '#') continue;
      DlLine(store, line).axiom();
    }
  }
  store.close();
}

TripleStore load_triples(std::string_view text, OntologySyntax syntax) {
  TripleStore store;
  load_into(store, text, syntax);
  return store;
}

std::string add_concept(TripleStore& store, std::string_view expression) {
  return DlLine(store, expression).standalone_concept();
}

}  // namespace bpkb

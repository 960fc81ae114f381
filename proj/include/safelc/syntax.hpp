// Concrete syntax: parsing, printing and JSON export of types and terms.
//
//   type   ::= 'o' | type '->' type | '(' type ')'
//   term   ::= var | '\' binder+ '.' term | atom+ | '(' term ')'
//   binder ::= ident ':' type
//
// A source file may start with a typing context `x:o, f:o->o |- ...`.
// Lines starting with '#' are comments.
#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "safelc/term.hpp"

namespace safelc {

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

/// A term together with the context it is typed in.
struct Judgment {
  TypeEnv env;
  Term term;
};

namespace detail {

enum class Tok { Ident, Lambda, Dot, Colon, Arrow, LParen, RParen, Comma, Turnstile, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    auto push = [&](Tok k, std::size_t n) {
      out.push_back({k, std::string(src.substr(i, n)), l, cl});
      advance(n);
    };
    if (c == '\\') {
      push(Tok::Lambda, 1);
    } else if (src.substr(i, 2) == "\xCE\xBB") {
      push(Tok::Lambda, 2);
    } else if (c == '.') {
      push(Tok::Dot, 1);
    } else if (c == ':') {
      push(Tok::Colon, 1);
    } else if (src.substr(i, 2) == "->") {
      push(Tok::Arrow, 2);
    } else if (src.substr(i, 3) == "\xE2\x86\x92") {
      push(Tok::Arrow, 3);
    } else if (src.substr(i, 2) == "|-") {
      push(Tok::Turnstile, 2);
    } else if (src.substr(i, 3) == "\xE2\x8A\xA2") {
      push(Tok::Turnstile, 3);
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == ',') {
      push(Tok::Comma, 1);
    } else if (ident_start(c)) {
      std::size_t n = 1;
      while (i + n < src.size() && ident_char(src[i + n])) ++n;
      push(Tok::Ident, n);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, bool canonical) : toks_(lex(src)), canonical_(canonical) {}

  Type parse_type_only() {
    Type t = type();
    expect(Tok::End, "end of input");
    return t;
  }

  Term parse_term_only() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

  Judgment parse_judgment() {
    TypeEnv env;
    if (has_turnstile()) {
      while (peek().kind != Tok::Turnstile) {
        const Token& name = expect(Tok::Ident, "variable name in context");
        expect(Tok::Colon, "':'");
        Type t = type();
        if (!env.emplace(name.text, t).second)
          throw ParseError("duplicate context entry '" + name.text + "'", name.line, name.column);
        if (peek().kind == Tok::Comma) next();
      }
      next();
    }
    Term t = term();
    expect(Tok::End, "end of input");
    return {std::move(env), std::move(t)};
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.line, t.column);
  }

  bool has_turnstile() const {
    for (const Token& t : toks_)
      if (t.kind == Tok::Turnstile) return true;
    return false;
  }

  Type type() {
    Type lhs = type_atom();
    if (peek().kind == Tok::Arrow) {
      next();
      return Type::arrow(lhs, type());
    }
    return lhs;
  }

  Type type_atom() {
    if (peek().kind == Tok::Ident && peek().text == "o") {
      next();
      return Type::ground();
    }
    if (peek().kind == Tok::LParen) {
      next();
      Type t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a type");
  }

  Term term() {
    if (peek().kind == Tok::Lambda) return lambda();
    return application();
  }

  Term lambda() {
    expect(Tok::Lambda, "'\\'");
    std::vector<Binder> binders;
    do {
      const Token& name = expect(Tok::Ident, "binder name");
      if (peek().kind != Tok::Colon) {
        throw ParseError("binder '" + name.text + "' lacks a type annotation", name.line, name.column);
      }
      next();
      binders.push_back({name.text, type()});
    } while (peek().kind == Tok::Ident);
    expect(Tok::Dot, "'.'");
    // An unparenthesised lambda directly after the dot continues the block.
    Term body = term();
    if (body.is_abs() && !last_paren_) {
      binders.insert(binders.end(), body.binders().begin(), body.binders().end());
      return Term::abs(std::move(binders), body.body());
    }
    last_paren_ = false;
    return canonical_ ? make_abs(std::move(binders), body) : Term::abs(std::move(binders), body);
  }

  Term application() {
    Term head = atom();
    bool head_paren = last_paren_;
    std::vector<Term> args;
    while (true) {
      Tok k = peek().kind;
      if (k == Tok::Ident || k == Tok::LParen) {
        args.push_back(atom());
      } else if (k == Tok::Lambda) {
        args.push_back(lambda());
        break;
      } else {
        break;
      }
    }
    if (args.empty()) {
      last_paren_ = head_paren;
      return head;
    }
    last_paren_ = false;
    if (canonical_ || !head_paren) return make_app(head, std::move(args));
    return Term::app(head, std::move(args));
  }

  Term atom() {
    if (peek().kind == Tok::Ident) {
      if (peek().text == "o") fail("'o' is reserved for the ground type");
      last_paren_ = false;
      return Term::var(next().text);
    }
    if (peek().kind == Tok::LParen) {
      next();
      Term t = term();
      expect(Tok::RParen, "')'");
      last_paren_ = true;
      return t;
    }
    fail("expected a term");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool canonical_;
  // Whether the most recently parsed term was written inside parentheses.
  bool last_paren_ = false;
};

}  // namespace detail

inline Type parse_type(std::string_view text) { return detail::Parser(text, true).parse_type_only(); }

/// Parses and canonicalizes.
inline Term parse(std::string_view text) { return detail::Parser(text, true).parse_term_only(); }

/// Parses without merging parenthesised blocks: `\x:o.(\y:o. x)` stays two
/// abstraction blocks and `(f x) y` stays two application blocks.
inline Term parse_raw(std::string_view text) { return detail::Parser(text, false).parse_term_only(); }

inline Judgment parse_judgment(std::string_view text, bool canonical = true) {
  return detail::Parser(text, canonical).parse_judgment();
}

namespace detail {

inline void print_binders(const std::vector<Binder>& bs, std::string& out) {
  out += "\\";
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (i) out += ' ';
    out += bs[i].name + ":" + bs[i].type.str();
  }
  out += ". ";
}

inline void print(const Term& t, std::string& out);

inline void print_atom(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += t.name();
  } else {
    out += '(';
    print(t, out);
    out += ')';
  }
}

inline void print(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Abs:
      print_binders(t.binders(), out);
      if (t.body().is_abs()) {
        print_atom(t.body(), out);
      } else {
        print(t.body(), out);
      }
      return;
    case Term::Kind::App:
      print_atom(t.head(), out);
      for (const Term& a : t.args()) {
        out += ' ';
        print_atom(a, out);
      }
      return;
  }
}

}  // namespace detail

/// Prints with minimal parentheses; the output reparses (with `parse_raw`)
/// to an identical term, non-canonical block structure included.
inline std::string pretty(const Term& t) {
  std::string out;
  detail::print(t, out);
  return out;
}

inline std::string pretty(const Judgment& j) {
  std::string out;
  bool first = true;
  for (const auto& [name, type] : j.env) {
    if (!first) out += ", ";
    out += name + ":" + type.str();
    first = false;
  }
  if (!j.env.empty()) out += " |- ";
  return out + pretty(j.term);
}

inline nlohmann::json to_json(const Term& t) {
  using nlohmann::json;
  switch (t.kind()) {
    case Term::Kind::Var:
      return json{{"kind", "var"}, {"name", t.name()}};
    case Term::Kind::Abs: {
      json bs = json::array();
      for (const Binder& b : t.binders()) bs.push_back(json{{"name", b.name}, {"type", b.type.str()}});
      return json{{"kind", "abs"}, {"binders", bs}, {"body", to_json(t.body())}};
    }
    case Term::Kind::App: {
      json args = json::array();
      for (const Term& a : t.args()) args.push_back(to_json(a));
      return json{{"kind", "app"}, {"head", to_json(t.head())}, {"args", args}};
    }
  }
  return {};
}

}  // namespace safelc

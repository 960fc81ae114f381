// Church encodings of naturals and words, the polynomial compiler and the
// word-function compiler.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "safelc/reduction.hpp"
#include "safelc/syntax.hpp"
#include "safelc/typing.hpp"

namespace safelc {

struct DecodeError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Naturals at type (o -> o) -> o -> o.
// ---------------------------------------------------------------------------

inline Term church_nat(std::uint64_t n) {
  Term body = Term::var("z");
  for (std::uint64_t i = 0; i < n; ++i) body = Term::app(Term::var("s"), {body});
  return Term::abs({{"s", Type::arrow(Type(), Type())}, {"z", Type()}}, body);
}

/// Reads back a closed beta-normal numeral (eta-short forms are accepted).
inline std::uint64_t decode_nat(const Term& term) {
  Type t;
  try {
    t = simple_type_of(term);
  } catch (const TypeError& e) {
    throw DecodeError(std::string("not a closed numeral: ") + e.what());
  }
  if (!(t == nat_type())) throw DecodeError("not a numeral: type " + t.str());
  Term e = eta_long(term);
  const std::string& s = e.binders()[0].name;
  const std::string& z = e.binders()[1].name;
  std::uint64_t n = 0;
  const Term* cur = &e.body();
  while (cur->is_app() && cur->head().is_var() && cur->head().name() == s && cur->args().size() == 1 && s != z) {
    ++n;
    cur = &cur->args()[0];
  }
  if (!cur->is_var() || cur->name() != z) throw DecodeError("not a numeral: " + pretty(term));
  return n;
}

inline const Term& church_add() {
  static const Term t = parse("\\m:(o->o)->o->o n:(o->o)->o->o s:o->o z:o. m s (n s z)");
  return t;
}

inline const Term& church_mul() {
  static const Term t = parse("\\m:(o->o)->o->o n:(o->o)->o->o s:o->o z:o. m (n s) z");
  return t;
}

// ---------------------------------------------------------------------------
// Polynomials with natural coefficients.
// ---------------------------------------------------------------------------

struct Polynomial {
  std::vector<std::string> variables;
  // Exponent vector (one entry per variable) -> coefficient; no zeros stored.
  std::map<std::vector<unsigned>, std::uint64_t> monomials;

  void add(std::vector<unsigned> exps, std::uint64_t coeff) {
    if (exps.size() != variables.size()) throw Error("exponent vector does not match the variable count");
    if (coeff == 0) return;
    monomials[std::move(exps)] += coeff;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, _] : monomials) {
      unsigned s = 0;
      for (unsigned x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  std::uint64_t evaluate(const std::vector<std::uint64_t>& at) const {
    if (at.size() != variables.size()) throw Error("wrong number of arguments");
    std::uint64_t sum = 0;
    for (const auto& [exps, c] : monomials) {
      std::uint64_t term = c;
      for (std::size_t i = 0; i < exps.size(); ++i)
        for (unsigned k = 0; k < exps[i]; ++k) term *= at[i];
      sum += term;
    }
    return sum;
  }

  std::string str() const {
    if (monomials.empty()) return "0";
    std::string out;
    // Highest degree first.
    for (auto it = monomials.rbegin(); it != monomials.rend(); ++it) {
      const auto& [exps, c] = *it;
      std::string m;
      if (c != 1) m = std::to_string(c);
      for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!m.empty()) m += "*";
        m += variables[i];
        if (exps[i] > 1) m += "^" + std::to_string(exps[i]);
      }
      if (m.empty()) m = "1";
      if (!out.empty()) out += " + ";
      out += m;
    }
    return out;
  }
};

/// Parses `x^2*y + 3*x + 2`. Variables are ordered by first appearance.
inline Polynomial parse_polynomial(std::string_view text) {
  Polynomial p;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError(msg, 1, i + 1);
  };
  auto number = [&]() -> std::uint64_t {
    skip();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a number");
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    return v;
  };
  std::vector<std::pair<std::uint64_t, std::map<std::string, unsigned>>> parsed;
  while (true) {
    std::uint64_t coeff = 1;
    std::map<std::string, unsigned> powers;
    while (true) {
      skip();
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coeff *= number();
      } else if (i < text.size() && detail::ident_start(text[i])) {
        std::size_t start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
        std::string name(text.substr(start, i - start));
        if (name == "o") fail("'o' is reserved");
        if (std::find(p.variables.begin(), p.variables.end(), name) == p.variables.end()) p.variables.push_back(name);
        skip();
        unsigned e = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          e = static_cast<unsigned>(number());
        }
        powers[name] += e;
      } else {
        fail("expected a coefficient or a variable");
      }
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    parsed.emplace_back(coeff, std::move(powers));
    skip();
    if (i < text.size() && text[i] == '+') {
      ++i;
      continue;
    }
    if (i != text.size()) fail("unexpected character");
    break;
  }
  for (const auto& [c, powers] : parsed) {
    std::vector<unsigned> exps(p.variables.size(), 0);
    for (const auto& [name, e] : powers)
      exps[static_cast<std::size_t>(std::find(p.variables.begin(), p.variables.end(), name) - p.variables.begin())] = e;
    p.add(std::move(exps), c);
  }
  return p;
}

/// A closed term of type nat -> ... -> nat -> nat built from the addition
/// and multiplication combinators and numerals for the coefficients.
inline Term compile_polynomial(const Polynomial& p) {
  std::optional<Term> sum;
  for (const auto& [exps, c] : p.monomials) {
    std::optional<Term> prod;
    auto times = [&](const Term& f) { prod = prod ? make_app(church_mul(), {*prod, f}) : f; };
    bool has_var = false;
    for (unsigned e : exps) has_var = has_var || e > 0;
    if (c != 1 || !has_var) times(church_nat(c));
    for (std::size_t i = 0; i < exps.size(); ++i)
      for (unsigned k = 0; k < exps[i]; ++k) times(Term::var(p.variables[i]));
    sum = sum ? make_app(church_add(), {*sum, *prod}) : *prod;
  }
  Term body = sum ? *sum : church_nat(0);
  std::vector<Binder> binders;
  for (const std::string& v : p.variables) binders.push_back({v, nat_type()});
  return make_abs(std::move(binders), body);
}

/// Applies a compiled polynomial to numerals and decodes the normal form.
inline std::uint64_t run_polynomial(const Term& compiled, const std::vector<std::uint64_t>& at, Strategy strategy,
                                    const ReductionBudget& budget = {}) {
  std::vector<Term> args;
  for (std::uint64_t v : at) args.push_back(church_nat(v));
  return decode_nat(normalize(make_app(compiled, std::move(args)), strategy, budget));
}

// ---------------------------------------------------------------------------
// Conditional candidates.
// ---------------------------------------------------------------------------

struct ConditionalCandidate {
  std::string name;
  Term term;  // nat -> nat -> nat -> nat; cond n a b = (n == 0 ? a : b)
  SafetyVerdict verdict;
};

/// Textbook definitions of case-on-zero over numerals of type nat. All are
/// simply typed; none is safe.
inline std::vector<ConditionalCandidate> conditional_candidates() {
  static const std::vector<std::pair<std::string, std::string>> sources = {
      {"iteration", "\\n:(o->o)->o->o a:(o->o)->o->o b:(o->o)->o->o s:o->o z:o. n (\\y:o. b s z) (a s z)"},
      {"k-combinator",
       "\\n:(o->o)->o->o a:(o->o)->o->o b:(o->o)->o->o s:o->o z:o. n ((\\u:o v:o. u) (b s z)) (a s z)"},
      {"boolean-test",
       "\\n:(o->o)->o->o a:(o->o)->o->o b:(o->o)->o->o s:o->o z:o. "
       "(\\p:o q:o. n (\\y:o. q) p) (a s z) (b s z)"},
      {"eta-expanded-step",
       "\\n:(o->o)->o->o a:(o->o)->o->o b:(o->o)->o->o s:o->o z:o. n (\\y:o. b (\\w:o. s w) z) (a s z)"},
  };
  std::vector<ConditionalCandidate> out;
  for (const auto& [name, src] : sources) {
    Term t = parse(src);
    out.push_back({name, t, safety_check(t)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Words over a finite alphabet at type (o->o)^n -> o -> o.
// ---------------------------------------------------------------------------

struct Word {
  std::string alphabet;  // distinct symbols, in binder order
  std::string letters;

  Word(std::string alpha, std::string w) : alphabet(std::move(alpha)), letters(std::move(w)) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet.find(alphabet[i]) != i) throw Error("alphabet has a repeated symbol");
    for (char c : letters)
      if (alphabet.find(c) == std::string::npos) throw Error(std::string("letter '") + c + "' is not in the alphabet");
  }

  friend bool operator==(const Word&, const Word&) = default;
};

/// Binder name used for the i-th letter.
inline std::string letter_binder(const std::string& alphabet, std::size_t i) {
  char c = alphabet[i];
  if (std::islower(static_cast<unsigned char>(c)) && c != 'o' && c != 'w' && c != 'y' && c != 'z') return std::string(1, c);
  return "l" + std::to_string(i);
}

inline Type word_type(const std::string& alphabet) {
  std::vector<Type> args(alphabet.size(), Type::arrow(Type(), Type()));
  args.push_back(Type());
  return Type::arrow(std::move(args), Type());
}

inline Term church_word(const Word& w) {
  Term body = Term::var("z");
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    body = Term::app(Term::var(letter_binder(w.alphabet, w.alphabet.find(*it))), {body});
  std::vector<Binder> binders;
  for (std::size_t i = 0; i < w.alphabet.size(); ++i)
    binders.push_back({letter_binder(w.alphabet, i), Type::arrow(Type(), Type())});
  binders.push_back({"z", Type()});
  return Term::abs(std::move(binders), body);
}

inline Word decode_word(const Term& term, const std::string& alphabet) {
  Type t;
  try {
    t = simple_type_of(term);
  } catch (const TypeError& e) {
    throw DecodeError(std::string("not a closed word: ") + e.what());
  }
  if (!(t == word_type(alphabet))) throw DecodeError("not a word over '" + alphabet + "': type " + t.str());
  Term e = eta_long(term);
  const auto& bs = e.binders();
  std::string letters;
  const Term* cur = &e.body();
  auto binder_index = [&](const std::string& n) -> std::optional<std::size_t> {
    // The innermost binder of a name wins.
    for (std::size_t i = bs.size(); i-- > 0;)
      if (bs[i].name == n) return i;
    return std::nullopt;
  };
  while (cur->is_app() && cur->head().is_var() && cur->args().size() == 1) {
    auto idx = binder_index(cur->head().name());
    if (!idx || *idx >= alphabet.size()) throw DecodeError("not a word: " + pretty(term));
    letters += alphabet[*idx];
    cur = &cur->args()[0];
  }
  if (!cur->is_var() || binder_index(cur->name()) != alphabet.size()) throw DecodeError("not a word: " + pretty(term));
  return Word(alphabet, letters);
}

// ---------------------------------------------------------------------------
// Word functions.
// ---------------------------------------------------------------------------

/// Unary word functions. `Input`, `Const`, `Concat`, `Hom` and `Compose`
/// have safe representations; `Reverse` and `IfEmpty` are accepted by the
/// parser and the evaluator but rejected by the compiler.
struct WordFunction {
  enum class Kind { Input, Const, Concat, Hom, Compose, Reverse, IfEmpty };

  Kind kind = Kind::Input;
  std::string word;                    // Const
  std::map<char, std::string> images;  // Hom
  std::vector<std::shared_ptr<const WordFunction>> children;

  static WordFunction input() { return {}; }
  static WordFunction constant(std::string w) {
    WordFunction f;
    f.kind = Kind::Const;
    f.word = std::move(w);
    return f;
  }
  static WordFunction node(Kind k, std::vector<WordFunction> cs, std::map<char, std::string> images = {}) {
    WordFunction f;
    f.kind = k;
    f.images = std::move(images);
    for (WordFunction& c : cs) f.children.push_back(std::make_shared<const WordFunction>(std::move(c)));
    return f;
  }
  static WordFunction concat(WordFunction a, WordFunction b) { return node(Kind::Concat, {std::move(a), std::move(b)}); }
  static WordFunction hom(std::map<char, std::string> images, WordFunction a) {
    return node(Kind::Hom, {std::move(a)}, std::move(images));
  }
  static WordFunction compose(WordFunction outer, WordFunction inner) {
    return node(Kind::Compose, {std::move(outer), std::move(inner)});
  }

  std::string str() const {
    auto quote = [](const std::string& s) { return "\"" + s + "\""; };
    switch (kind) {
      case Kind::Input:
        return "input";
      case Kind::Const:
        return quote(word);
      case Kind::Concat:
        return "concat(" + children[0]->str() + ", " + children[1]->str() + ")";
      case Kind::Hom: {
        std::string m;
        for (const auto& [c, w] : images) m += (m.empty() ? "" : ", ") + std::string(1, c) + " -> " + quote(w);
        return "hom({" + m + "}, " + children[0]->str() + ")";
      }
      case Kind::Compose:
        return "compose(" + children[0]->str() + ", " + children[1]->str() + ")";
      case Kind::Reverse:
        return "reverse(" + children[0]->str() + ")";
      case Kind::IfEmpty:
        return "ifempty(" + children[0]->str() + ", " + children[1]->str() + ", " + children[2]->str() + ")";
    }
    return "?";
  }
};

/// Parses the word-function language:
///
///   f ::= input | "w" | concat(f, f) | hom({a -> "w", ...}, f)
///       | compose(f, f) | reverse(f) | ifempty(f, f, f)
inline WordFunction parse_word_function(std::string_view text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '#')) {
      if (text[i] == '#')
        while (i < text.size() && text[i] != '\n') ++i;
      else
        ++i;
    }
  };
  auto fail = [&](const std::string& msg) { throw ParseError(msg, 1, i + 1); };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  };
  auto literal = [&]() {
    expect('"');
    std::size_t end = text.find('"', i);
    if (end == std::string_view::npos) fail("unterminated string");
    std::string w(text.substr(i, end - i));
    i = end + 1;
    return w;
  };
  std::function<WordFunction()> expr = [&]() -> WordFunction {
    skip();
    if (i < text.size() && text[i] == '"') return WordFunction::constant(literal());
    std::size_t start = i;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    std::string kw(text.substr(start, i - start));
    if (kw == "input") return WordFunction::input();
    if (kw == "hom") {
      expect('(');
      expect('{');
      std::map<char, std::string> images;
      skip();
      while (i < text.size() && text[i] != '}') {
        char letter = text[i++];
        skip();
        if (text.substr(i, 2) != "->") fail("expected '->'");
        i += 2;
        images[letter] = literal();
        skip();
        if (i < text.size() && text[i] == ',') {
          ++i;
          skip();
        }
      }
      expect('}');
      expect(',');
      WordFunction a = expr();
      expect(')');
      return WordFunction::hom(std::move(images), std::move(a));
    }
    std::size_t arity = kw == "concat" || kw == "compose" ? 2 : kw == "reverse" ? 1 : kw == "ifempty" ? 3 : 0;
    if (arity == 0) fail(kw.empty() ? "expected a word function" : "unknown word function '" + kw + "'");
    expect('(');
    std::vector<WordFunction> cs;
    for (std::size_t k = 0; k < arity; ++k) {
      if (k) expect(',');
      cs.push_back(expr());
    }
    expect(')');
    auto kind = kw == "concat"    ? WordFunction::Kind::Concat
                : kw == "compose" ? WordFunction::Kind::Compose
                : kw == "reverse" ? WordFunction::Kind::Reverse
                                  : WordFunction::Kind::IfEmpty;
    return WordFunction::node(kind, std::move(cs));
  };
  WordFunction f = expr();
  skip();
  if (i != text.size()) fail("trailing input");
  return f;
}

/// Direct evaluation on strings.
inline std::string evaluate_word_function(const WordFunction& f, const std::string& w) {
  using K = WordFunction::Kind;
  switch (f.kind) {
    case K::Input:
      return w;
    case K::Const:
      return f.word;
    case K::Concat:
      return evaluate_word_function(*f.children[0], w) + evaluate_word_function(*f.children[1], w);
    case K::Hom: {
      std::string out;
      for (char c : evaluate_word_function(*f.children[0], w)) {
        auto it = f.images.find(c);
        out += it == f.images.end() ? std::string(1, c) : it->second;
      }
      return out;
    }
    case K::Compose:
      return evaluate_word_function(*f.children[0], evaluate_word_function(*f.children[1], w));
    case K::Reverse: {
      std::string r = evaluate_word_function(*f.children[0], w);
      return {r.rbegin(), r.rend()};
    }
    case K::IfEmpty:
      return evaluate_word_function(*f.children[0], w).empty() ? evaluate_word_function(*f.children[1], w)
                                                               : evaluate_word_function(*f.children[2], w);
  }
  return {};
}

struct UnrepresentableError : Error {
  using Error::Error;
};

namespace detail {

struct WordCompiler {
  std::string alphabet;
  Type w_type;

  std::vector<Binder> letter_binders() const {
    std::vector<Binder> bs;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      bs.push_back({letter_binder(alphabet, i), Type::arrow(Type(), Type())});
    return bs;
  }

  std::vector<Term> letter_vars() const {
    std::vector<Term> vs;
    for (std::size_t i = 0; i < alphabet.size(); ++i) vs.push_back(Term::var(letter_binder(alphabet, i)));
    return vs;
  }

  Term word_body(const std::string& w, Term tail) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      auto pos = alphabet.find(*it);
      if (pos == std::string::npos) throw Error(std::string("letter '") + *it + "' is not in the alphabet");
      tail = Term::app(Term::var(letter_binder(alphabet, pos)), {tail});
    }
    return tail;
  }

  // A term of type W with the input as the free variable `w`.
  Term compile(const WordFunction& f) const {
    using K = WordFunction::Kind;
    std::vector<Binder> bs = letter_binders();
    bs.push_back({"z", Type()});
    switch (f.kind) {
      case K::Input:
        return Term::var("w");
      case K::Const:
        return church_word(Word(alphabet, f.word));
      case K::Concat: {
        std::vector<Term> inner = letter_vars();
        inner.push_back(Term::var("z"));
        Term rhs = make_app(compile(*f.children[1]), inner);
        std::vector<Term> outer = letter_vars();
        outer.push_back(rhs);
        return make_abs(bs, make_app(compile(*f.children[0]), outer));
      }
      case K::Hom: {
        std::vector<Term> args;
        for (char c : alphabet) {
          auto it = f.images.find(c);
          std::string image = it == f.images.end() ? std::string(1, c) : it->second;
          args.push_back(Term::abs({{"y", Type()}}, word_body(image, Term::var("y"))));
        }
        args.push_back(Term::var("z"));
        return make_abs(bs, make_app(compile(*f.children[0]), args));
      }
      case K::Compose:
        return make_app(Term::abs({{"w", w_type}}, compile(*f.children[0])), {compile(*f.children[1])});
      case K::Reverse:
      case K::IfEmpty:
        throw UnrepresentableError("'" + f.str() + "' is outside the class of safely representable word functions");
    }
    throw Error("unreachable");
  }
};

}  // namespace detail

/// A closed safe term of type W -> W, W the word type over `alphabet`.
inline Term compile_word_function(const WordFunction& f, const std::string& alphabet) {
  detail::WordCompiler c{alphabet, word_type(alphabet)};
  return make_abs({{"w", c.w_type}}, c.compile(f));
}

inline Word run_word_function(const Term& compiled, const Word& input, Strategy strategy,
                              const ReductionBudget& budget = {}) {
  return decode_word(normalize(make_app(compiled, {church_word(input)}), strategy, budget), input.alphabet);
}

/// Catalogue of safely representable word functions over {a, b}.
inline std::vector<std::pair<std::string, WordFunction>> word_function_catalogue() {
  using W = WordFunction;
  return {
      {"constant-empty", W::constant("")},
      {"constant-ab", W::constant("ab")},
      {"identity", W::input()},
      {"append-ab", W::concat(W::input(), W::constant("ab"))},
      {"prepend-ba", W::concat(W::constant("ba"), W::input())},
      {"square", W::concat(W::input(), W::input())},
      {"hom-a-bb-b-a", W::hom({{'a', "bb"}, {'b', "a"}}, W::input())},
      {"erase-a", W::hom({{'a', ""}}, W::input())},
      {"swap-letters", W::hom({{'a', "b"}, {'b', "a"}}, W::input())},
      {"hom-of-concat", W::hom({{'a', "ab"}}, W::concat(W::input(), W::constant("b")))},
      {"compose-square-swap",
       W::compose(W::concat(W::input(), W::input()), W::hom({{'a', "b"}, {'b', "a"}}, W::input()))},
      {"triple-with-separator",
       W::concat(W::input(), W::concat(W::constant("a"), W::concat(W::input(), W::input())))},
  };
}

}  // namespace safelc

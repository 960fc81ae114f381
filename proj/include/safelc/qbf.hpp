// Quantified boolean formulas: syntax tree, parser and printer.
#pragma once

#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "safelc/syntax.hpp"

namespace safelc {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Var, Not, And, Or };

  Kind kind = Kind::Var;
  std::string name;
  FormulaPtr left, right;

  static FormulaPtr var(std::string n) { return std::make_shared<const Formula>(Formula{Kind::Var, std::move(n), {}, {}}); }
  static FormulaPtr negate(FormulaPtr a) { return std::make_shared<const Formula>(Formula{Kind::Not, {}, std::move(a), {}}); }
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<const Formula>(Formula{Kind::And, {}, std::move(a), std::move(b)});
  }
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<const Formula>(Formula{Kind::Or, {}, std::move(a), std::move(b)});
  }

  std::size_t depth() const {
    switch (kind) {
      case Kind::Var:
        return 0;
      case Kind::Not:
        return 1 + left->depth();
      default:
        return 1 + std::max(left->depth(), right->depth());
    }
  }

  std::size_t size() const {
    switch (kind) {
      case Kind::Var:
        return 1;
      case Kind::Not:
        return 1 + left->size();
      default:
        return 1 + left->size() + right->size();
    }
  }
};

enum class Quantifier { ForAll, Exists };

struct QBF {
  std::vector<std::pair<Quantifier, std::string>> prefix;
  FormulaPtr matrix;

  /// Prefix length plus matrix nodes.
  std::size_t size() const { return prefix.size() + matrix->size(); }
};

namespace detail {

inline void formula_vars(const Formula& f, std::set<std::string>& out) {
  if (f.kind == Formula::Kind::Var) {
    out.insert(f.name);
    return;
  }
  formula_vars(*f.left, out);
  if (f.right) formula_vars(*f.right, out);
}

// Precedence: | lowest, then &, then !.
inline std::string formula_str(const Formula& f, int ctx) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Var:
      return f.name;
    case K::Not:
      return "!" + formula_str(*f.left, 2);
    case K::And: {
      std::string s = formula_str(*f.left, 1) + " & " + formula_str(*f.right, 2);
      return ctx > 1 ? "(" + s + ")" : s;
    }
    case K::Or: {
      std::string s = formula_str(*f.left, 0) + " | " + formula_str(*f.right, 1);
      return ctx > 0 ? "(" + s + ")" : s;
    }
  }
  return {};
}

class QbfParser {
 public:
  explicit QbfParser(std::string_view text) : text_(text) {}

  QBF parse() {
    QBF q;
    while (true) {
      skip();
      std::size_t save = pos_;
      std::string kw = ident();
      Quantifier quant;
      if (kw == "forall") {
        quant = Quantifier::ForAll;
      } else if (kw == "exists") {
        quant = Quantifier::Exists;
      } else {
        pos_ = save;
        break;
      }
      bool any = false;
      while (true) {
        skip();
        if (peek() == '.') break;
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        std::string v = ident();
        if (v.empty()) fail("expected a variable name");
        if (v == "forall" || v == "exists") fail("'" + v + "' is reserved");
        q.prefix.emplace_back(quant, v);
        any = true;
      }
      if (!any) fail("quantifier without variables");
      ++pos_;
    }
    q.matrix = disjunction();
    skip();
    if (pos_ != text_.size()) fail("unexpected input");

    std::set<std::string> bound;
    for (const auto& [_, v] : q.prefix)
      if (!bound.insert(v).second) throw ParseError("variable '" + v + "' is quantified twice", 1, 1);
    std::set<std::string> used;
    formula_vars(*q.matrix, used);
    for (const std::string& v : used)
      if (!bound.contains(v)) throw ParseError("formula is not closed: '" + v + "' is free", 1, 1);
    return q;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && ident_start(text_[pos_]))
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                                     text_[pos_] == '\''))
        ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (true) {
      skip();
      if (peek() != '|') return f;
      ++pos_;
      f = Formula::disj(f, conjunction());
    }
  }

  FormulaPtr conjunction() {
    FormulaPtr f = unary();
    while (true) {
      skip();
      if (peek() != '&') return f;
      ++pos_;
      f = Formula::conj(f, unary());
    }
  }

  FormulaPtr unary() {
    skip();
    if (peek() == '!') {
      ++pos_;
      return Formula::negate(unary());
    }
    if (peek() == '(') {
      ++pos_;
      FormulaPtr f = disjunction();
      skip();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return f;
    }
    std::string v = ident();
    if (v.empty()) fail("expected a variable, '!' or '('");
    return Formula::var(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// `forall x. exists y z. (x | y) & !z`. Binary connectives are left
/// associative; `!` binds tightest, then `&`, then `|`.
inline QBF parse_qbf(std::string_view text) { return detail::QbfParser(text).parse(); }

inline std::string to_string(const Formula& f) { return detail::formula_str(f, 0); }

inline std::string to_string(const QBF& q) {
  std::string out;
  for (const auto& [quant, v] : q.prefix) out += (quant == Quantifier::ForAll ? "forall " : "exists ") + v + ". ";
  return out + to_string(*q.matrix);
}

}  // namespace safelc

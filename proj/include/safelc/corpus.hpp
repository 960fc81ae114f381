// Hand-written and randomly generated term corpora.
#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "safelc/syntax.hpp"
#include "safelc/typing.hpp"

namespace safelc {

struct CorpusEntry {
  std::string name;
  std::string source;
  bool raw = false;  // parse without merging parenthesised blocks
  SafetyLevel expected;

  Judgment judgment() const { return parse_judgment(source, !raw); }
};

/// Terms with known safety verdicts.
inline const std::vector<CorpusEntry>& hand_corpus() {
  using L = SafetyLevel;
  static const std::vector<CorpusEntry> corpus = {
      {"identity", "\\x:o. x", false, L::Safe},
      {"k-combinator", "\\x:o y:o. x", false, L::Safe},
      {"apply", "\\f:o->o x:o. f x", false, L::Safe},
      {"twice", "\\f:o->o x:o. f (f x)", false, L::Safe},
      {"grouped", "\\x:o. \\f:o->o. f x", false, L::Safe},
      {"ungrouped", "\\x:o.(\\f:o->o. f x)", true, L::UnsafeTypable},
      {"kierstead-safe", "\\f:(o->o)->o. f (\\x:o. f (\\y:o. y))", false, L::Safe},
      {"kierstead-unsafe", "\\f:(o->o)->o. f (\\x:o. f (\\y:o. x))", false, L::UnsafeTypable},
      {"church-0", "\\s:o->o z:o. z", false, L::Safe},
      {"church-1", "\\s:o->o z:o. s z", false, L::Safe},
      {"church-3", "\\s:o->o z:o. s (s (s z))", false, L::Safe},
      {"church-add", "\\m:(o->o)->o->o n:(o->o)->o->o s:o->o z:o. m s (n s z)", false, L::Safe},
      {"church-mul", "\\m:(o->o)->o->o n:(o->o)->o->o s:o->o z:o. m (n s) z", false, L::Safe},
      {"church-2-times-2",
       "(\\m:(o->o)->o->o n:(o->o)->o->o s:o->o z:o. m (n s) z) (\\s:o->o z:o. s (s z)) (\\s:o->o z:o. s (s z))",
       false, L::Safe},
      {"church-2-pow-2",
       "(\\F:(o->o)->o->o x:o->o. F (F x)) (\\s:o->o z:o. s (s z))", false, L::Safe},
      {"partial-redex-witness", "\\a:o g:o->o. (\\x:o f:o->o. f x) a g", false, L::Safe},
      {"partial-redex-ungrouped", "\\a:o g:o->o. (\\x:o. (\\f:o->o. f x)) a g", true, L::UnsafeTypable},
      {"free-apply", "f:o->o, x:o |- f x", false, L::Safe},
      {"free-var-arrow", "f:o->o |- f", false, L::Safe},
      {"partial-application", "f:o->o->o, x:o |- f x", false, L::AlmostSafe},
      {"partial-redex-free", "z:o |- (\\x:o y:o. x) z", false, L::AlmostSafe},
      {"partial-app-under-lambda", "f:o->o->o |- \\x:o. f x", false, L::UnsafeTypable},
      {"constant-function", "x:o, f:o->o |- \\y:o. f x", false, L::UnsafeTypable},
      {"higher-apply", "g:(o->o)->o |- g (\\x:o. x)", false, L::Safe},
      {"lambda-over-free-ground", "f:(o->o)->o, y:o |- f (\\x:o. y)", false, L::UnsafeTypable},
      {"if-zero",
       "\\n:(o->o)->o->o a:(o->o)->o->o b:(o->o)->o->o s:o->o z:o. n (\\y:o. b s z) (a s z)", false,
       L::UnsafeTypable},
      {"numeral-order-3", "\\F:(o->o)->o->o x:o->o. F (F x)", false, L::Safe},
      {"numeral-order-4",
       "\\P:((o->o)->o->o)->(o->o)->o->o F:(o->o)->o->o. P (P F)", false, L::Safe},
      {"order-4-unsafe", "\\K:((o->o)->o)->o z:o. K (\\f:o->o. K (\\g:o->o. f z))", false, L::UnsafeTypable},
      {"self-application", "f:o->o |- f f", false, L::IllTyped},
      {"unbound", "\\x:o. y", false, L::IllTyped},
      {"too-many-arguments", "\\x:o. x x", false, L::IllTyped},
      {"argument-mismatch", "\\f:(o->o)->o x:o. f x", false, L::IllTyped},
      {"church-true", "\\t:o f:o. t", false, L::Safe},
      {"church-and", "\\p:o->o->o q:o->o->o t:o f:o. p (q t f) f", false, L::Safe},
      {"qbf-exists-x",
       "(\\G:(o->o->o)->o->o->o t:o f:o. G (\\t:o f:o. t) t (G (\\t:o f:o. f) t f)) (\\x:o->o->o. x)", false,
       L::Safe},
      {"shadowing-safe", "\\x:o. (\\x:o. x) x", false, L::Safe},
      {"redex-argument", "\\f:o->o. (\\g:o->o x:o. g x) (\\y:o. f y)", false, L::Safe},
  };
  return corpus;
}

struct GeneratedTerm {
  Term term;
  Type type;
};

/// Random generator of closed, well-typed, canonical terms.
///
/// Every variable name is tied to a single type, so two variables with the
/// same name always have the same type. Binder names are drawn from small
/// pools, which makes shadowing frequent.
class TermGenerator {
 public:
  explicit TermGenerator(std::uint64_t seed, std::size_t fuel = 14) : rng_(seed), fuel_(fuel) {}

  /// Candidate result types; all are inhabited by closed terms.
  static const std::vector<Type>& top_types() {
    static const std::vector<Type> types = [] {
      std::vector<Type> out;
      for (const char* s : {"o->o", "o->o->o", "(o->o)->o->o", "(o->o)->(o->o)->o->o", "((o->o)->o)->o->o",
                            "(o->o->o)->o->o", "o->(o->o)->o", "((o->o)->o->o)->(o->o)->o->o",
                            "(((o->o)->o)->o)->o->o", "((o->o)->o)->(o->o)->o"})
        out.push_back(parse_type(s));
      return out;
    }();
    return types;
  }

  GeneratedTerm closed_term() {
    const auto& types = top_types();
    while (true) {
      Type t = types[pick(types.size())];
      try {
        std::vector<Binder> scope;
        long fuel = static_cast<long>(fuel_);
        nodes_left_ = static_cast<long>(max_size());
        return {gen(t, scope, fuel, true), t};
      } catch (const Retry&) {
      }
    }
  }

  GeneratedTerm closed_term(const Type& t) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      try {
        std::vector<Binder> scope;
        long fuel = static_cast<long>(fuel_);
        nodes_left_ = static_cast<long>(max_size());
        return {gen(t, scope, fuel, true), t};
      } catch (const Retry&) {
      }
    }
    throw Error("could not generate a closed term of type " + t.str());
  }

  /// Splits binder and argument blocks at random, producing a non-canonical
  /// term whose canonical form is the input.
  Term ungroup(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var:
        return t;
      case Term::Kind::Abs: {
        Term body = ungroup(t.body());
        const auto& bs = t.binders();
        std::size_t cut = bs.size() > 1 && coin() ? 1 + pick(bs.size() - 1) : bs.size();
        Term inner = cut < bs.size() ? Term::abs({bs.begin() + static_cast<std::ptrdiff_t>(cut), bs.end()}, body) : body;
        return Term::abs({bs.begin(), bs.begin() + static_cast<std::ptrdiff_t>(cut)}, inner);
      }
      case Term::Kind::App: {
        Term head = ungroup(t.head());
        std::vector<Term> args;
        for (const Term& a : t.args()) args.push_back(ungroup(a));
        std::size_t cut = args.size() > 1 && coin() ? 1 + pick(args.size() - 1) : args.size();
        if (cut == args.size()) return Term::app(head, std::move(args));
        Term inner = Term::app(head, {args.begin(), args.begin() + static_cast<std::ptrdiff_t>(cut)});
        return Term::app(inner, {args.begin() + static_cast<std::ptrdiff_t>(cut), args.end()});
      }
    }
    return t;
  }

  std::mt19937_64& rng() { return rng_; }

  // Fuel bounds the search only loosely; oversized terms are redrawn.
  std::size_t max_size() const { return 40 * fuel_; }

 private:
  struct Retry {};

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  std::string name_for(const Type& t) {
    static const std::map<std::string, std::vector<std::string>> pools = {
        {"o", {"x", "y", "z"}},
        {"o -> o", {"f", "g", "h"}},
        {"o -> o -> o", {"p", "q"}},
        {"(o -> o) -> o", {"F", "G"}},
        {"(o -> o) -> o -> o", {"m", "n"}},
    };
    auto it = pools.find(t.str());
    if (it != pools.end()) return it->second[pick(it->second.size())];
    auto [pos, inserted] = other_types_.emplace(t.str(), other_types_.size());
    return "v" + std::to_string(pos->second) + (coin() ? "a" : "b");
  }

  Term gen(const Type& t, std::vector<Binder>& scope, long& fuel, bool top = false) {
    --fuel;
    if (--nodes_left_ < 0) throw Retry{};
    if (!t.is_ground() && (top || fuel <= 0 || coin(0.75))) {
      std::size_t k = top || fuel <= 0 ? t.arity() : 1 + pick(t.arity());
      std::vector<Binder> bs;
      for (std::size_t i = 0; i < k; ++i) bs.push_back({name_for(t.args()[i]), t.args()[i]});
      std::size_t mark = scope.size();
      scope.insert(scope.end(), bs.begin(), bs.end());
      Term body = gen_neutral(t.drop(k), scope, fuel);
      scope.resize(mark);
      return make_abs(std::move(bs), body);
    }
    return gen_neutral(t, scope, fuel);
  }

  // A variable application or a redex at type `t`.
  Term gen_neutral(const Type& t, std::vector<Binder>& scope, long& fuel) {
    if (fuel > 2 && coin(0.3)) return gen_redex(t, scope, fuel);
    // Innermost binding of each name, collected in scope order.
    std::vector<std::pair<Binder, std::size_t>> heads;
    for (std::size_t i = 0; i < scope.size(); ++i) {
      bool shadowed = false;
      for (std::size_t j = i + 1; j < scope.size(); ++j) shadowed = shadowed || scope[j].name == scope[i].name;
      if (shadowed) continue;
      const Type& vt = scope[i].type;
      for (std::size_t j = 0; j <= vt.arity(); ++j)
        if (vt.drop(j) == t && (vt.arity() - j) == t.arity()) heads.emplace_back(scope[i], j);
    }
    if (heads.empty()) {
      if (fuel > -6) return gen_redex(t, scope, fuel);
      throw Retry{};
    }
    if (fuel <= 0) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < heads.size(); ++i)
        if (heads[i].second < heads[best].second) best = i;
      if (heads[best].second > 0 && fuel < -8) throw Retry{};
      if (coin(0.5)) std::swap(heads[0], heads[best]);
      heads.resize(1);
    }
    auto [var, nargs] = heads[pick(heads.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < nargs; ++i) args.push_back(gen(var.type.args()[i], scope, fuel));
    return make_app(Term::var(var.name), std::move(args));
  }

  Term gen_redex(const Type& t, std::vector<Binder>& scope, long& fuel) {
    static const std::vector<Type> param_types = {Type::ground(), Type::arrow(Type::ground(), Type::ground()),
                                                  parse_type("o->o->o")};
    std::size_t n = 1 + pick(2);
    std::vector<Type> params;
    for (std::size_t i = 0; i < n; ++i) params.push_back(param_types[pick(param_types.size())]);
    // Keep the remaining binders of the result in the same block as the
    // redex binders so that partial redex blocks arise.
    Type lam_type = Type::arrow(params, t);
    Term lam = gen(lam_type, scope, fuel, true);
    std::size_t k = n;
    std::vector<Term> args;
    for (std::size_t i = 0; i < k; ++i) args.push_back(gen(params[i], scope, fuel));
    return make_app(lam, std::move(args));
  }

  std::mt19937_64 rng_;
  std::size_t fuel_;
  long nodes_left_ = 0;
  std::map<std::string, std::size_t> other_types_;
};

}  // namespace safelc

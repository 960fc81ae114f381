// Simple typing, the safety judgments and eta-long forms.
#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "safelc/syntax.hpp"
#include "safelc/term.hpp"

namespace safelc {

namespace detail {

// Context with shadowing, used while descending through binders.
class Scope {
 public:
  explicit Scope(const TypeEnv& env) : env_(env) {}

  void push(const std::vector<Binder>& bs) {
    for (const Binder& b : bs) stack_.push_back(b);
  }
  void pop(std::size_t n) { stack_.resize(stack_.size() - n); }

  const Type* lookup(const std::string& name) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
      if (it->name == name) return &it->type;
    auto it = env_.find(name);
    return it == env_.end() ? nullptr : &it->second;
  }

 private:
  const TypeEnv& env_;
  std::vector<Binder> stack_;
};

inline Type type_of(Scope& scope, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      const Type* ty = scope.lookup(t.name());
      if (!ty) throw TypeError("unbound variable '" + t.name() + "'");
      return *ty;
    }
    case Term::Kind::Abs: {
      scope.push(t.binders());
      Type body = type_of(scope, t.body());
      scope.pop(t.binders().size());
      std::vector<Type> args;
      for (const Binder& b : t.binders()) args.push_back(b.type);
      return Type::arrow(std::move(args), body);
    }
    case Term::Kind::App: {
      Type head = type_of(scope, t.head());
      if (t.args().size() > head.arity())
        throw TypeError("too many arguments: '" + pretty(t.head()) + "' of type " + head.str() + " applied to " +
                        std::to_string(t.args().size()));
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        Type arg = type_of(scope, t.args()[i]);
        if (!(arg == head.args()[i]))
          throw TypeError("argument type mismatch: argument " + std::to_string(i + 1) + " of '" + pretty(t.head()) +
                          "' expects " + head.args()[i].str() + ", got " + arg.str());
      }
      return head.drop(t.args().size());
    }
  }
  throw TypeError("unreachable");
}

}  // namespace detail

/// Church-style type checking. Throws TypeError.
inline Type simple_type_of(const TypeEnv& env, const Term& term) {
  detail::Scope scope(env);
  return detail::type_of(scope, term);
}

inline Type simple_type_of(const Term& term) { return simple_type_of(TypeEnv{}, term); }

// ---------------------------------------------------------------------------
// Safety.
//
//   (var)    x:A |-s x : A
//   (abs)    G, x1:A1 .. xn:An |-s M : B
//            ---------------------------------   ord(A1->..->An->B) <= ord G
//            G |-s \x1..xn. M : A1->..->An->B
//   (app_as) G |-s M : A1->..->Al->B   G |-s Ni : Ai
//            ---------------------------------   (no side condition)
//            G |-as M N1 .. Nl : B
//   (app)    G |-as M N1 .. Nl : B
//            ---------------------------------   ord B <= ord G
//            G |-s M N1 .. Nl : B
//
// with weakening, so G may always be taken to be the free variables of the
// subject; "ord B <= ord G" means ord B <= ord y for every y in G. The rules
// are applied per block: each Abs node is one (abs) instance and each App
// node one (app) instance.
// ---------------------------------------------------------------------------

enum class SafetyLevel { Safe = 0, AlmostSafe = 1, UnsafeTypable = 2, IllTyped = 3 };

inline const char* to_string(SafetyLevel l) {
  switch (l) {
    case SafetyLevel::Safe:
      return "Safe";
    case SafetyLevel::AlmostSafe:
      return "AlmostSafe";
    case SafetyLevel::UnsafeTypable:
      return "UnsafeTypable";
    case SafetyLevel::IllTyped:
      return "IllTyped";
  }
  return "?";
}

/// One rule instance in a safety derivation.
struct RuleApplication {
  std::string rule;      // var | abs | app_as | app
  std::string location;  // path from the root, e.g. "/body/arg1"
  Type type;
  unsigned term_order = 0;
  std::vector<std::pair<std::string, unsigned>> free_var_orders;
  bool ok = true;
  std::optional<std::string> violating_var;
  std::optional<unsigned> violating_order;
};

struct SafetyVerdict {
  SafetyLevel level = SafetyLevel::IllTyped;
  std::optional<Type> type;
  std::vector<RuleApplication> trace;
  std::string error;  // type error message when IllTyped

  /// The failing entry of the trace, if any.
  const RuleApplication* failure() const {
    for (const RuleApplication& r : trace)
      if (!r.ok) return &r;
    return nullptr;
  }
};

namespace detail {

struct SafetyWalker {
  explicit SafetyWalker(const TypeEnv& env) : scope(env) {}

  Scope scope;
  std::vector<RuleApplication> trace;
  bool failed = false;

  struct Result {
    Type type;
    std::map<std::string, unsigned> free;  // free variable -> order
    bool safe;
  };

  RuleApplication entry(std::string rule, const std::string& loc, const Result& r) {
    RuleApplication e;
    e.rule = std::move(rule);
    e.location = loc.empty() ? "/" : loc;
    e.type = r.type;
    e.term_order = r.type.order();
    for (const auto& [n, o] : r.free) e.free_var_orders.emplace_back(n, o);
    return e;
  }

  // Checks ord(type) <= ord(y) for all free y; records the first violation.
  bool side_condition(RuleApplication& e) {
    for (const auto& [n, o] : e.free_var_orders) {
      if (o < e.term_order) {
        e.ok = false;
        e.violating_var = n;
        e.violating_order = o;
        return false;
      }
    }
    return true;
  }

  void record(RuleApplication e) {
    // Only the first failure is kept; later entries are still derivation steps.
    if (!e.ok) {
      if (failed) return;
      failed = true;
    }
    trace.push_back(std::move(e));
  }

  // Judges `t` for |-s; when `top_as` is set an application at this node is
  // only required to be almost safe.
  Result walk(const Term& t, const std::string& loc, bool top_as = false) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        const Type* ty = scope.lookup(t.name());
        if (!ty) throw TypeError("unbound variable '" + t.name() + "'");
        Result r{*ty, {{t.name(), ty->order()}}, true};
        record(entry("var", loc, r));
        return r;
      }
      case Term::Kind::Abs: {
        scope.push(t.binders());
        Result body = walk(t.body(), loc + "/body");
        scope.pop(t.binders().size());
        std::vector<Type> args;
        for (const Binder& b : t.binders()) args.push_back(b.type);
        Result r{Type::arrow(std::move(args), body.type), body.free, body.safe};
        for (const Binder& b : t.binders()) r.free.erase(b.name);
        // Binders shadowed by a later binder of the same block are not free either.
        RuleApplication e = entry("abs", loc, r);
        if (!side_condition(e)) r.safe = false;
        record(std::move(e));
        return r;
      }
      case Term::Kind::App: {
        Result head = walk(t.head(), loc + "/head");
        if (t.args().size() > head.type.arity())
          throw TypeError("too many arguments applied to '" + pretty(t.head()) + "'");
        Result r{head.type.drop(t.args().size()), head.free, head.safe};
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          Result a = walk(t.args()[i], loc + "/arg" + std::to_string(i + 1));
          if (!(a.type == head.type.args()[i]))
            throw TypeError("argument type mismatch: argument " + std::to_string(i + 1) + " of '" + pretty(t.head()) +
                            "' expects " + head.type.args()[i].str() + ", got " + a.type.str());
          r.free.insert(a.free.begin(), a.free.end());
          r.safe = r.safe && a.safe;
        }
        RuleApplication as = entry("app_as", loc, r);
        record(std::move(as));
        if (top_as) return r;
        RuleApplication e = entry("app", loc, r);
        if (!side_condition(e)) r.safe = false;
        record(std::move(e));
        return r;
      }
    }
    throw TypeError("unreachable");
  }
};

}  // namespace detail

/// Classifies a term as Safe, AlmostSafe, UnsafeTypable or IllTyped.
///
/// The term is judged block by block exactly as given, so a non-canonical
/// term can be less safe than its canonical form. The trace holds the
/// derivation attempted at the reported level with at most one failing entry.
inline SafetyVerdict safety_check(const TypeEnv& env, const Term& term) {
  SafetyVerdict v;
  try {
    v.type = simple_type_of(env, term);
  } catch (const TypeError& e) {
    v.level = SafetyLevel::IllTyped;
    v.error = e.what();
    return v;
  }

  detail::SafetyWalker safe(env);
  if (safe.walk(term, "").safe) {
    v.level = SafetyLevel::Safe;
    v.trace = std::move(safe.trace);
    return v;
  }
  if (term.is_app()) {
    detail::SafetyWalker almost(env);
    if (almost.walk(term, "", true).safe) {
      v.level = SafetyLevel::AlmostSafe;
      // Report the top-level (app) failure that prevented Safe.
      v.trace = std::move(almost.trace);
      for (const RuleApplication& r : safe.trace)
        if (!r.ok) v.trace.push_back(r);
      return v;
    }
  }
  v.level = SafetyLevel::UnsafeTypable;
  v.trace = std::move(safe.trace);
  return v;
}

inline SafetyVerdict safety_check(const Term& term) { return safety_check(TypeEnv{}, term); }

// ---------------------------------------------------------------------------
// Eta-long forms.
// ---------------------------------------------------------------------------

namespace detail {

class EtaExpander {
 public:
  EtaExpander(const TypeEnv& env, std::set<std::string> taken) : scope_(env), taken_(std::move(taken)) {
    for (const auto& [n, _] : env) taken_.insert(n);
  }

  // Eta-long form of `t` at type `ty`.
  Term expand(const Term& t, const Type& ty) {
    std::vector<Binder> binders;
    const Term* body = &t;
    if (t.is_abs()) {
      binders = t.binders();
      body = &t.body();
    }
    Type rest = ty.drop(binders.size());
    std::vector<Binder> extra;
    for (const Type& a : rest.args()) extra.push_back({fresh(a), a});
    binders.insert(binders.end(), extra.begin(), extra.end());

    scope_.push(binders);
    Term h = body->is_app() ? body->head() : *body;
    std::vector<Term> args = body->is_app() ? body->args() : std::vector<Term>{};
    for (const Binder& b : extra) args.push_back(Term::var(b.name));

    Type head_type = detail::type_of(scope_, h);
    Term new_head = h.is_var() ? h : expand(h, head_type);
    for (std::size_t i = 0; i < args.size(); ++i) args[i] = expand(args[i], head_type.args()[i]);
    scope_.pop(binders.size());

    return make_abs(std::move(binders), make_app(new_head, std::move(args)));
  }

 private:
  std::string fresh(const Type& ty) {
    std::string base = ty.is_ground() ? "x" : ty.order() == 1 ? "f" : "g";
    for (unsigned i = 1;; ++i) {
      std::string n = base + "_" + std::to_string(i);
      if (taken_.insert(n).second) return n;
    }
  }

  Scope scope_;
  std::set<std::string> taken_;
};

}  // namespace detail

/// Fully eta-expanded form: every variable occurrence and every redex is
/// applied to all its arguments and every argument of arrow type is an
/// abstraction. Fresh binders are named `x_N`, `f_N`, `g_N`.
inline Term eta_long(const TypeEnv& env, const Term& term) {
  Term t = canonicalize(term);
  Type ty = simple_type_of(env, t);
  return detail::EtaExpander(env, all_names(t)).expand(t, ty);
}

inline Term eta_long(const Term& term) { return eta_long(TypeEnv{}, term); }

}  // namespace safelc

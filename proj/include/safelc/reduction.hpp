// Substitution, beta and safe reduction, normalization and beta-eta equality.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "safelc/term.hpp"
#include "safelc/typing.hpp"

namespace safelc {

/// Simultaneous substitution; keys are distinct by construction.
using Substitution = std::map<std::string, Term>;

struct ReductionBudget {
  std::size_t max_steps = 100000;
  std::size_t max_term_size = 1000000;
};

struct BudgetExceeded : Error {
  BudgetExceeded(std::size_t steps, std::size_t size, const std::string& what)
      : Error(what + " (after " + std::to_string(steps) + " steps, term size " + std::to_string(size) + ")"),
        steps(steps),
        size(size) {}
  std::size_t steps;
  std::size_t size;
};

/// A broken internal invariant, e.g. a capture during safe reduction.
struct ContractViolation : Error {
  using Error::Error;
};

enum class Strategy { Plain, Safe };

inline const char* to_string(Strategy s) { return s == Strategy::Plain ? "plain" : "safe"; }

// ---------------------------------------------------------------------------
// Capture-avoiding substitution (the classical reference).
// ---------------------------------------------------------------------------

namespace detail {

inline std::string base_name(const std::string& n) {
  auto p = n.find('\'');
  return p == std::string::npos ? n : n.substr(0, p);
}

struct CaSubst {
  // Free names of every image, cached per call.
  // Holding the image keeps its address from being reused.
  std::map<const void*, std::pair<Term, std::set<std::string>>> image_fv;

  const std::set<std::string>& fv(const Term& image) {
    auto it = image_fv.find(image.id());
    if (it == image_fv.end()) it = image_fv.emplace(image.id(), std::pair{image, free_names(image)}).first;
    return it->second.second;
  }

  Term run(const Term& t, const Substitution& s) {
    if (s.empty()) return t;
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = s.find(t.name());
        return it == s.end() ? t : it->second;
      }
      case Term::Kind::App: {
        Term h = run(t.head(), s);
        bool changed = !h.same_node(t.head());
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) {
          args.push_back(run(a, s));
          changed = changed || !args.back().same_node(a);
        }
        return changed ? make_app(h, std::move(args)) : t;
      }
      case Term::Kind::Abs: {
        std::set<std::string> body_fv = free_names(t.body());
        Substitution inner;
        for (const auto& [k, v] : s) {
          bool bound = false;
          for (const Binder& b : t.binders()) bound = bound || b.name == k;
          if (!bound && body_fv.contains(k)) inner.emplace(k, v);
        }
        if (inner.empty()) return t;

        std::set<std::string> danger;
        for (const auto& [k, v] : inner) {
          const auto& f = fv(v);
          danger.insert(f.begin(), f.end());
        }
        std::vector<Binder> binders = t.binders();
        std::set<std::string> taken = danger;
        taken.insert(body_fv.begin(), body_fv.end());
        for (const Binder& b : binders) taken.insert(b.name);
        for (const auto& [k, _] : inner) taken.insert(k);
        for (std::size_t i = 0; i < binders.size(); ++i) {
          if (!danger.contains(binders[i].name)) continue;
          bool shadowed = false;
          for (std::size_t j = i + 1; j < binders.size(); ++j) shadowed = shadowed || binders[j].name == binders[i].name;
          std::string fresh;
          for (unsigned k = 1;; ++k) {
            fresh = base_name(binders[i].name) + "'" + std::to_string(k);
            if (taken.insert(fresh).second) break;
          }
          if (!shadowed) inner.insert_or_assign(binders[i].name, Term::var(fresh));
          binders[i].name = fresh;
        }
        return make_abs(std::move(binders), run(t.body(), inner));
      }
    }
    return t;
  }
};

}  // namespace detail

/// Simultaneous capture-avoiding substitution. A binder is renamed only when
/// it would capture a free variable of an image; fresh names are `y'1`,
/// `y'2`, ... for a binder `y`.
inline Term subst_capture_avoiding(const Term& term, const Substitution& s) {
  return detail::CaSubst{}.run(term, s);
}

// ---------------------------------------------------------------------------
// Substitution without renaming.
// ---------------------------------------------------------------------------

struct NoRenameResult {
  Term term;
  bool captured = false;
};

namespace detail {

struct NrSubst {
  // Holding the image keeps its address from being reused.
  std::map<const void*, std::pair<Term, std::set<std::string>>> image_fv;
  std::multiset<std::string> crossed;
  bool captured = false;

  Term run(const Term& t, const Substitution& s) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = s.find(t.name());
        if (it == s.end()) return t;
        auto f = image_fv.find(it->second.id());
        if (f == image_fv.end()) f = image_fv.emplace(it->second.id(), std::pair{it->second, free_names(it->second)}).first;
        for (const std::string& n : f->second.second)
          if (crossed.contains(n)) captured = true;
        return it->second;
      }
      case Term::Kind::App: {
        Term h = run(t.head(), s);
        bool changed = !h.same_node(t.head());
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) {
          args.push_back(run(a, s));
          changed = changed || !args.back().same_node(a);
        }
        return changed ? make_app(h, std::move(args)) : t;
      }
      case Term::Kind::Abs: {
        Substitution inner = s;
        for (const Binder& b : t.binders()) inner.erase(b.name);
        if (inner.empty()) return t;
        for (const Binder& b : t.binders()) crossed.insert(b.name);
        Term body = run(t.body(), inner);
        for (const Binder& b : t.binders()) crossed.erase(crossed.find(b.name));
        return body.same_node(t.body()) ? t : make_abs(t.binders(), body);
      }
    }
    return t;
  }
};

}  // namespace detail

/// Textual substitution. `captured` is set when a substituted occurrence sits
/// under a binder whose name is free in the image.
inline NoRenameResult subst_no_rename(const Term& term, const Substitution& s) {
  detail::NrSubst w;
  Term out = w.run(term, s);
  return {out, w.captured};
}

// ---------------------------------------------------------------------------
// Single steps.
// ---------------------------------------------------------------------------

namespace detail {

// Contracts the redex `t`, which must be an application whose head is an
// abstraction.
inline Term contract(const Term& t, Strategy strategy) {
  const Term& lam = t.head();
  const auto& xs = lam.binders();
  const auto& ns = t.args();
  if (strategy == Strategy::Plain) {
    std::vector<Binder> rest(xs.begin() + 1, xs.end());
    Term body = rest.empty() ? lam.body() : Term::abs(std::move(rest), lam.body());
    Term r = subst_capture_avoiding(body, {{xs[0].name, ns[0]}});
    return make_app(r, std::vector<Term>(ns.begin() + 1, ns.end()));
  }
  std::size_t m = std::min(xs.size(), ns.size());
  std::vector<Binder> rest(xs.begin() + static_cast<std::ptrdiff_t>(m), xs.end());
  Term body = rest.empty() ? lam.body() : Term::abs(std::move(rest), lam.body());
  Substitution s;
  for (std::size_t i = 0; i < m; ++i) s.insert_or_assign(xs[i].name, ns[i]);
  NoRenameResult r = subst_no_rename(body, s);
  if (r.captured) throw ContractViolation("variable capture during safe contraction of " + pretty(t));
  return make_app(r.term, std::vector<Term>(ns.begin() + static_cast<std::ptrdiff_t>(m), ns.end()));
}

inline std::optional<Term> step(const Term& t, Strategy strategy) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return std::nullopt;
    case Term::Kind::Abs: {
      auto b = step(t.body(), strategy);
      if (!b) return std::nullopt;
      return make_abs(t.binders(), *b);
    }
    case Term::Kind::App: {
      if (t.head().is_abs()) return contract(t, strategy);
      if (auto h = step(t.head(), strategy)) return make_app(*h, t.args());
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (auto a = step(t.args()[i], strategy)) {
          std::vector<Term> args = t.args();
          args[i] = *a;
          return make_app(t.head(), std::move(args));
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Contracts the leftmost-outermost redex on its first binder only.
inline std::optional<Term> beta_step(const Term& term) { return detail::step(term, Strategy::Plain); }

/// Contracts the leftmost-outermost redex block `(\x1..xn. M) N1..Nk` at once,
/// substituting N1..Nmin(n,k) without renaming. Throws ContractViolation if
/// that substitution captures a variable.
inline std::optional<Term> safe_step(const Term& term) { return detail::step(term, Strategy::Safe); }

inline std::optional<Term> reduce_step(const Term& term, Strategy s) { return detail::step(term, s); }

// ---------------------------------------------------------------------------
// Normalization.
// ---------------------------------------------------------------------------

struct NormalizeStats {
  Term term;
  std::size_t steps = 0;
};

namespace detail {

// Normal-order evaluation. Performs exactly the contractions of iterating
// reduce_step, but without re-scanning the normal prefix of the term.
struct Normalizer {
  Strategy strategy;
  ReductionBudget budget;
  std::size_t steps = 0;

  // `ctx` is the size of the whole term minus the size of `t`.
  Term nf(Term t, std::size_t ctx) {
    while (t.is_app() && t.head().is_abs()) {
      if (steps >= budget.max_steps) throw BudgetExceeded(steps, ctx + t.size(), "step budget exhausted");
      t = contract(t, strategy);
      ++steps;
      if (ctx + t.size() > budget.max_term_size)
        throw BudgetExceeded(steps, ctx + t.size(), "term size budget exhausted");
    }
    switch (t.kind()) {
      case Term::Kind::Var:
        return t;
      case Term::Kind::Abs: {
        Term b = nf(t.body(), ctx + 1);
        return b.same_node(t.body()) ? t : make_abs(t.binders(), b);
      }
      case Term::Kind::App: {
        std::size_t done = ctx + 1 + t.head().size();
        std::size_t pending = 0;
        for (const Term& a : t.args()) pending += a.size();
        std::vector<Term> args;
        args.reserve(t.args().size());
        bool changed = false;
        for (const Term& a : t.args()) {
          pending -= a.size();
          args.push_back(nf(a, done + pending));
          done += args.back().size();
          changed = changed || !args.back().same_node(a);
        }
        return changed ? make_app(t.head(), std::move(args)) : t;
      }
    }
    return t;
  }
};

}  // namespace detail

inline NormalizeStats normalize_with_stats(const Term& term, Strategy strategy, const ReductionBudget& budget = {}) {
  detail::Normalizer n{strategy, budget};
  Term out = n.nf(canonicalize(term), 0);
  return {out, n.steps};
}

/// Beta-normal form by leftmost-outermost reduction. Throws BudgetExceeded.
inline Term normalize(const Term& term, Strategy strategy, const ReductionBudget& budget = {}) {
  return normalize_with_stats(term, strategy, budget).term;
}

/// Runs reduce_step to normal form, calling `on_step(term, index)` for the
/// input and for every intermediate term. Returns the normal form.
inline Term reduction_sequence(const Term& term, Strategy strategy, const ReductionBudget& budget,
                               const std::function<void(const Term&, std::size_t)>& on_step) {
  Term t = canonicalize(term);
  std::size_t i = 0;
  on_step(t, i);
  while (auto next = reduce_step(t, strategy)) {
    if (i >= budget.max_steps) throw BudgetExceeded(i, t.size(), "step budget exhausted");
    t = *next;
    ++i;
    if (t.size() > budget.max_term_size) throw BudgetExceeded(i, t.size(), "term size budget exhausted");
    on_step(t, i);
  }
  return t;
}

/// Compares eta-long beta-normal forms. Throws TypeError if the types differ.
inline bool beta_eta_equal(const TypeEnv& env, const Term& a, const Term& b, const ReductionBudget& budget = {}) {
  Type ta = simple_type_of(env, a);
  Type tb = simple_type_of(env, b);
  if (!(ta == tb)) throw TypeError("type mismatch: " + ta.str() + " vs " + tb.str());
  return alpha_eq(eta_long(env, normalize(a, Strategy::Plain, budget)),
                  eta_long(env, normalize(b, Strategy::Plain, budget)));
}

inline bool beta_eta_equal(const Term& a, const Term& b, const ReductionBudget& budget = {}) {
  return beta_eta_equal(TypeEnv{}, a, b, budget);
}

}  // namespace safelc

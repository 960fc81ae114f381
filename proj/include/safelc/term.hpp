// Annotated lambda terms in grouped (n-ary) form.
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "safelc/type.hpp"

namespace safelc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TypeError : Error {
  using Error::Error;
};

struct Binder {
  std::string name;
  Type type;
  friend bool operator==(const Binder&, const Binder&) = default;
};

class Term;

struct Var {
  std::string name;
};

struct Abs {
  std::vector<Binder> binders;
  std::shared_ptr<const Term> body;
};

struct App {
  std::shared_ptr<const Term> head;
  std::vector<Term> args;
};

/// Immutable term handle. Subterms are shared, so copies are O(1).
///
/// The `var`/`abs`/`app` factories build exactly the node asked for; the
/// `make_abs`/`make_app` factories merge adjacent blocks and always yield
/// canonical output when given canonical input. The safety judgment is
/// sensitive to the difference, so raw construction is kept available.
class Term {
 public:
  enum class Kind { Var, Abs, App };

  static Term var(std::string name) { return Term(Var{std::move(name)}, 1); }

  static Term abs(std::vector<Binder> binders, Term body) {
    if (binders.empty()) throw Error("abstraction with an empty binder block");
    std::size_t sz = 1 + body.size();
    return Term(Abs{std::move(binders), std::make_shared<const Term>(std::move(body))}, sz);
  }

  static Term app(Term head, std::vector<Term> args) {
    if (args.empty()) throw Error("application with no arguments");
    std::size_t sz = 1 + head.size();
    for (const Term& a : args) sz += a.size();
    return Term(App{std::make_shared<const Term>(std::move(head)), std::move(args)}, sz);
  }

  Kind kind() const { return static_cast<Kind>(node_->value.index()); }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_abs() const { return kind() == Kind::Abs; }
  bool is_app() const { return kind() == Kind::App; }

  const std::string& name() const { return std::get<Var>(node_->value).name; }
  const std::vector<Binder>& binders() const { return std::get<Abs>(node_->value).binders; }
  const Term& body() const { return *std::get<Abs>(node_->value).body; }
  const Term& head() const { return *std::get<App>(node_->value).head; }
  const std::vector<Term>& args() const { return std::get<App>(node_->value).args; }

  /// Node count.
  std::size_t size() const { return node_->size; }

  bool same_node(const Term& o) const { return node_ == o.node_; }
  const void* id() const { return node_.get(); }

 private:
  struct Node {
    std::variant<Var, Abs, App> value;
    std::size_t size;
  };

  Term(std::variant<Var, Abs, App> v, std::size_t sz)
      : node_(std::make_shared<const Node>(Node{std::move(v), sz})) {}

  std::shared_ptr<const Node> node_;
};

/// Typing context Γ. Keys are unique by construction.
using TypeEnv = std::map<std::string, Type>;

inline Term make_abs(std::vector<Binder> binders, const Term& body) {
  if (binders.empty()) return body;
  if (body.is_abs()) {
    binders.insert(binders.end(), body.binders().begin(), body.binders().end());
    return Term::abs(std::move(binders), body.body());
  }
  return Term::abs(std::move(binders), body);
}

inline Term make_app(const Term& head, std::vector<Term> args) {
  if (args.empty()) return head;
  if (head.is_app()) {
    std::vector<Term> all = head.args();
    all.insert(all.end(), std::make_move_iterator(args.begin()), std::make_move_iterator(args.end()));
    return Term::app(head.head(), std::move(all));
  }
  return Term::app(head, std::move(args));
}

inline bool is_canonical(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return true;
    case Term::Kind::Abs:
      return !t.body().is_abs() && is_canonical(t.body());
    case Term::Kind::App:
      if (t.head().is_app() || !is_canonical(t.head())) return false;
      for (const Term& a : t.args())
        if (!is_canonical(a)) return false;
      return true;
  }
  return false;
}

/// Merges nested abstraction blocks and nested application heads.
/// Canonical subterms are shared rather than rebuilt.
inline Term canonicalize(const Term& t) {
  if (is_canonical(t)) return t;
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::Abs:
      return make_abs(t.binders(), canonicalize(t.body()));
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(canonicalize(a));
      return make_app(canonicalize(t.head()), std::move(args));
    }
  }
  return t;
}

namespace detail {

inline void collect_free(const Term& t, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (!bound.contains(t.name())) out.insert(t.name());
      return;
    case Term::Kind::Abs:
      for (const Binder& b : t.binders()) bound.insert(b.name);
      collect_free(t.body(), bound, out);
      for (const Binder& b : t.binders()) bound.erase(bound.find(b.name));
      return;
    case Term::Kind::App:
      collect_free(t.head(), bound, out);
      for (const Term& a : t.args()) collect_free(a, bound, out);
      return;
  }
}

inline void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out.insert(t.name());
      return;
    case Term::Kind::Abs:
      for (const Binder& b : t.binders()) out.insert(b.name);
      collect_names(t.body(), out);
      return;
    case Term::Kind::App:
      collect_names(t.head(), out);
      for (const Term& a : t.args()) collect_names(a, out);
      return;
  }
}

}  // namespace detail

/// Names of the free variables, untyped.
inline std::set<std::string> free_names(const Term& t) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  detail::collect_free(t, bound, out);
  return out;
}

/// Every identifier occurring in the term, bound or free.
inline std::set<std::string> all_names(const Term& t) {
  std::set<std::string> out;
  detail::collect_names(t, out);
  return out;
}

/// Free variables together with their types. A bare term does not mention
/// the types of its free variables, so they are taken from `env`.
inline std::map<std::string, Type> free_vars(const Term& t, const TypeEnv& env = {}) {
  std::map<std::string, Type> out;
  for (const std::string& n : free_names(t)) {
    auto it = env.find(n);
    if (it == env.end()) throw TypeError("free variable '" + n + "' has no type in the context");
    out.emplace(n, it->second);
  }
  return out;
}

namespace detail {

// Scope maps a name to the (depth, position) of its innermost binder.
struct AlphaScope {
  std::unordered_map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> names;
  std::size_t depth = 0;

  void push(const std::vector<Binder>& bs) {
    for (std::size_t i = 0; i < bs.size(); ++i) names[bs[i].name].emplace_back(depth, i);
    ++depth;
  }
  void pop(const std::vector<Binder>& bs) {
    for (const Binder& b : bs) names[b.name].pop_back();
    --depth;
  }
  const std::pair<std::size_t, std::size_t>* lookup(const std::string& n) const {
    auto it = names.find(n);
    if (it == names.end() || it->second.empty()) return nullptr;
    return &it->second.back();
  }
};

inline bool alpha_eq_rec(const Term& a, const Term& b, AlphaScope& sa, AlphaScope& sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      const auto* la = sa.lookup(a.name());
      const auto* lb = sb.lookup(b.name());
      if (!la && !lb) return a.name() == b.name();
      if (!la || !lb) return false;
      // Binder blocks are compared by distance from the occurrence.
      return sa.depth - la->first == sb.depth - lb->first && la->second == lb->second;
    }
    case Term::Kind::Abs: {
      if (a.binders().size() != b.binders().size()) return false;
      for (std::size_t i = 0; i < a.binders().size(); ++i)
        if (!(a.binders()[i].type == b.binders()[i].type)) return false;
      sa.push(a.binders());
      sb.push(b.binders());
      bool eq = alpha_eq_rec(a.body(), b.body(), sa, sb);
      sa.pop(a.binders());
      sb.pop(b.binders());
      return eq;
    }
    case Term::Kind::App: {
      if (a.args().size() != b.args().size()) return false;
      if (!alpha_eq_rec(a.head(), b.head(), sa, sb)) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_eq_rec(a.args()[i], b.args()[i], sa, sb)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Equality up to renaming of bound variables (binder types must agree).
inline bool alpha_eq(const Term& a, const Term& b) {
  detail::AlphaScope sa, sb;
  return detail::alpha_eq_rec(a, b, sa, sb);
}

/// Structural identity, names included.
inline bool identical(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.name() == b.name();
    case Term::Kind::Abs:
      return a.binders() == b.binders() && identical(a.body(), b.body());
    case Term::Kind::App:
      if (a.args().size() != b.args().size() || !identical(a.head(), b.head())) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!identical(a.args()[i], b.args()[i])) return false;
      return true;
  }
  return false;
}

}  // namespace safelc

// Computation trees, traversals and justification pointers.
//
// The tree of a term is the syntax tree of its eta-long form with lambda
// nodes (possibly binding nothing) alternating with variable and @ nodes.
// A traversal is a justified sequence of node occurrences. Each occurrence
// records the rule that produced it:
//
//   Root      the root lambda, unjustified.
//   Lam       the child of a lambda; a variable points to the occurrence of
//             its binder in the P-view (free variables point to the root),
//             an @ is unjustified.
//   App       the operator child of an @, pointing to the @.
//   Var       after a variable x_i bound by an occurrence L whose
//             predecessor is n: the i-th argument child of n, pointing to n.
//   InputVar  after a variable hereditarily justified by the root: any
//             child of that variable, pointing to it.
//
// Lambdas are O-moves, variables and @ nodes are P-moves.
#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "safelc/reduction.hpp"
#include "safelc/syntax.hpp"
#include "safelc/typing.hpp"

namespace safelc {

struct TreeNode {
  enum class Kind { Lambda, App, Var };

  Kind kind = Kind::Lambda;
  std::vector<Binder> binders;     // Lambda
  std::string name;                // Var
  std::optional<std::size_t> binder;  // Var: binding lambda node, none if free
  std::size_t binder_index = 0;    // Var: 1-based position in that lambda
  Type type;
  unsigned order = 0;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;

  bool is_lambda() const { return kind == Kind::Lambda; }
  bool is_var() const { return kind == Kind::Var; }
  bool is_app() const { return kind == Kind::App; }
};

class ComputationTree {
 public:
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  TypeEnv env;

  const TreeNode& operator[](std::size_t i) const { return nodes[i]; }
  std::size_t size() const { return nodes.size(); }

  std::string label(std::size_t i) const {
    const TreeNode& n = nodes[i];
    switch (n.kind) {
      case TreeNode::Kind::App:
        return "@";
      case TreeNode::Kind::Var:
        return n.name;
      case TreeNode::Kind::Lambda: {
        std::string s = "\\";
        for (std::size_t k = 0; k < n.binders.size(); ++k) s += (k ? " " : "") + n.binders[k].name;
        return s;
      }
    }
    return "?";
  }

  /// Highest order among the tree's variables and lambdas.
  unsigned max_order() const {
    unsigned m = 0;
    for (const TreeNode& n : nodes) m = std::max(m, n.order);
    return m;
  }
};

namespace detail {

struct TreeBuilder {
  ComputationTree tree;

  struct Scoped {
    std::string name;
    Type type;
    std::size_t node;
    std::size_t index;
  };
  std::vector<Scoped> scope;

  std::size_t add(TreeNode n, std::optional<std::size_t> parent) {
    n.parent = parent;
    tree.nodes.push_back(std::move(n));
    std::size_t id = tree.nodes.size() - 1;
    if (parent) tree.nodes[*parent].children.push_back(id);
    return id;
  }

  std::size_t lambda(const Term& t, std::optional<std::size_t> parent) {
    TreeNode n;
    n.kind = TreeNode::Kind::Lambda;
    if (t.is_abs()) n.binders = t.binders();
    std::vector<Type> args;
    for (const Binder& b : n.binders) args.push_back(b.type);
    n.type = args.empty() ? Type() : Type::arrow(args, Type());
    n.order = order_of(n.type);
    std::size_t id = add(std::move(n), parent);
    std::size_t mark = scope.size();
    const auto& bs = tree.nodes[id].binders;
    for (std::size_t i = 0; i < bs.size(); ++i) scope.push_back({bs[i].name, bs[i].type, id, i + 1});
    inner(t.is_abs() ? t.body() : t, id);
    scope.resize(mark);
    return id;
  }

  void inner(const Term& t, std::size_t parent) {
    if (t.is_abs()) throw Error("computation tree: term is not canonical");
    const Term& head = t.is_app() ? t.head() : t;
    std::span<const Term> args;
    if (t.is_app()) args = t.args();
    if (head.is_abs()) {
      TreeNode n;
      n.kind = TreeNode::Kind::App;
      std::size_t id = add(std::move(n), parent);
      lambda(head, id);
      for (const Term& a : args) lambda(a, id);
      return;
    }
    TreeNode n;
    n.kind = TreeNode::Kind::Var;
    n.name = head.name();
    auto it = std::find_if(scope.rbegin(), scope.rend(), [&](const Scoped& s) { return s.name == n.name; });
    if (it != scope.rend()) {
      n.type = it->type;
      n.binder = it->node;
      n.binder_index = it->index;
    } else {
      auto e = tree.env.find(n.name);
      if (e == tree.env.end()) throw TypeError("unbound variable '" + n.name + "'");
      n.type = e->second;
    }
    if (n.type.arity() != args.size()) throw Error("computation tree: '" + n.name + "' is not fully applied");
    n.order = order_of(n.type);
    std::size_t id = add(std::move(n), parent);
    for (const Term& a : args) lambda(a, id);
  }
};

}  // namespace detail

/// The tree of eta_long(env, term).
inline ComputationTree build_computation_tree(const TypeEnv& env, const Term& term) {
  simple_type_of(env, term);
  detail::TreeBuilder b;
  b.tree.env = env;
  b.lambda(eta_long(env, term), std::nullopt);
  return std::move(b.tree);
}

inline ComputationTree build_computation_tree(const Term& term) { return build_computation_tree(TypeEnv{}, term); }

// ---------------------------------------------------------------------------
// Traversals.
// ---------------------------------------------------------------------------

enum class Rule { Root, Lam, App, Var, InputVar };
enum class Parity { O, P };

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::Root:
      return "Root";
    case Rule::Lam:
      return "Lam";
    case Rule::App:
      return "App";
    case Rule::Var:
      return "Var";
    case Rule::InputVar:
      return "InputVar";
  }
  return "?";
}

inline const char* to_string(Parity p) { return p == Parity::O ? "O" : "P"; }

struct Occurrence {
  std::size_t node = 0;
  std::optional<std::size_t> justifier;  // none means initial
  Rule rule = Rule::Root;
  Parity parity = Parity::O;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

using Traversal = std::vector<Occurrence>;

inline Parity parity_of(const TreeNode& n) { return n.is_lambda() ? Parity::O : Parity::P; }

/// Indices of the P-view of the first `end` occurrences of `t`.
inline std::vector<std::size_t> p_view(const ComputationTree& tree, const Traversal& t, std::size_t end) {
  std::vector<std::size_t> out;
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(end) - 1;
  while (i >= 0) {
    const Occurrence& o = t[static_cast<std::size_t>(i)];
    out.push_back(static_cast<std::size_t>(i));
    if (tree[o.node].is_lambda()) {
      if (!o.justifier) break;
      i = static_cast<std::ptrdiff_t>(*o.justifier);
    } else {
      --i;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::vector<std::size_t> p_view(const ComputationTree& tree, const Traversal& t) {
  return p_view(tree, t, t.size());
}

/// True if the justification chain from occurrence i reaches the root.
inline bool hereditarily_justified_by_root(const Traversal& t, std::size_t i) {
  while (i != 0) {
    if (!t[i].justifier) return false;
    i = *t[i].justifier;
  }
  return true;
}

/// Every one-occurrence extension of `t` licensed by the rules.
inline std::vector<Occurrence> extensions(const ComputationTree& tree, const Traversal& t) {
  if (t.empty()) return {{0, std::nullopt, Rule::Root, Parity::O}};
  std::size_t last = t.size() - 1;
  const TreeNode& n = tree[t[last].node];
  switch (n.kind) {
    case TreeNode::Kind::Lambda: {
      std::size_t child = n.children.at(0);
      const TreeNode& c = tree[child];
      Occurrence o{child, std::nullopt, Rule::Lam, Parity::P};
      if (c.is_var()) {
        if (!c.binder) {
          o.justifier = 0;
        } else {
          auto view = p_view(tree, t);
          auto it = std::find_if(view.rbegin(), view.rend(), [&](std::size_t k) { return t[k].node == *c.binder; });
          if (it == view.rend()) throw Error("traversal: binder of '" + c.name + "' is not in the P-view");
          o.justifier = *it;
        }
      }
      return {o};
    }
    case TreeNode::Kind::App:
      return {{n.children.at(0), last, Rule::App, Parity::O}};
    case TreeNode::Kind::Var: {
      if (hereditarily_justified_by_root(t, last)) {
        std::vector<Occurrence> out;
        for (std::size_t c : n.children) out.push_back({c, last, Rule::InputVar, Parity::O});
        return out;
      }
      std::size_t binder_occ = *t[last].justifier;
      std::size_t caller = binder_occ - 1;
      const TreeNode& m = tree[t[caller].node];
      // An @ keeps its operator at child 0.
      std::size_t k = m.is_app() ? n.binder_index : n.binder_index - 1;
      return {{m.children.at(k), caller, Rule::Var, Parity::O}};
    }
  }
  return {};
}

struct TraversalSet {
  std::vector<Traversal> maximal;
  std::vector<Traversal> truncated;  // cut at the length bound
};

/// Breadth-first enumeration in child order. `max_count` bounds the number
/// of traversals kept in flight.
inline TraversalSet enumerate_traversals(const ComputationTree& tree, std::size_t max_len,
                                         std::size_t max_count = 200000) {
  TraversalSet out;
  std::deque<Traversal> queue{Traversal{}};
  queue.front().push_back(extensions(tree, {}).front());
  while (!queue.empty()) {
    Traversal t = std::move(queue.front());
    queue.pop_front();
    auto ext = extensions(tree, t);
    if (ext.empty()) {
      out.maximal.push_back(std::move(t));
      continue;
    }
    if (t.size() >= max_len) {
      out.truncated.push_back(std::move(t));
      continue;
    }
    for (const Occurrence& o : ext) {
      Traversal next = t;
      next.push_back(o);
      queue.push_back(std::move(next));
    }
    if (queue.size() + out.maximal.size() + out.truncated.size() > max_count)
      throw BudgetExceeded(t.size(), queue.size(), "too many traversals");
  }
  return out;
}

/// The subsequence of occurrences hereditarily justified by the root, with
/// justifiers re-indexed.
inline Traversal core_projection(const Traversal& t) {
  std::vector<std::optional<std::size_t>> remap(t.size());
  Traversal out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!hereditarily_justified_by_root(t, i)) continue;
    Occurrence o = t[i];
    if (o.justifier) o.justifier = remap[*o.justifier];
    remap[i] = out.size();
    out.push_back(o);
  }
  return out;
}

namespace detail {

struct NormalFormAssembler {
  const ComputationTree& tree;
  const std::vector<Traversal>& cores;
  std::set<std::string> free_names;
  std::map<std::size_t, std::vector<std::string>> names;  // core position -> binder names
  std::map<std::string, unsigned> in_scope;

  Term lambda(const std::vector<std::size_t>& group, std::size_t pos) {
    const Traversal& first = cores[group.front()];
    const TreeNode& l = tree[first[pos].node];
    std::vector<Binder> binders;
    std::vector<std::string> assigned;
    for (const Binder& b : l.binders) {
      std::string n = b.name;
      for (unsigned k = 1; in_scope.contains(n) || free_names.contains(n); ++k) n = b.name + "'" + std::to_string(k);
      ++in_scope[n];
      assigned.push_back(n);
      binders.push_back({n, b.type});
    }
    names[pos] = assigned;
    Term body = variable(group, pos + 1);
    for (const std::string& n : assigned)
      if (--in_scope[n] == 0) in_scope.erase(n);
    names.erase(pos);
    return binders.empty() ? body : make_abs(std::move(binders), body);
  }

  Term variable(const std::vector<std::size_t>& group, std::size_t pos) {
    const Traversal& first = cores[group.front()];
    if (pos >= first.size()) throw Error("traversal core ends at a lambda");
    const Occurrence& o = first[pos];
    const TreeNode& v = tree[o.node];
    if (!v.is_var()) throw Error("traversal core contains an @ node");
    std::string name = v.name;
    if (v.binder) name = names.at(*o.justifier).at(v.binder_index - 1);
    std::vector<Term> args;
    for (std::size_t c : v.children) {
      std::vector<std::size_t> sub;
      for (std::size_t g : group)
        if (cores[g].size() > pos + 1 && cores[g][pos + 1].node == c) sub.push_back(g);
      if (sub.empty()) throw Error("no traversal explores child " + std::to_string(c) + " of '" + v.name + "'");
      args.push_back(lambda(sub, pos + 1));
    }
    return args.empty() ? Term::var(name) : make_app(Term::var(name), std::move(args));
  }
};

}  // namespace detail

/// Assembles the eta-long normal form from the cores of all maximal
/// traversals. Throws BudgetExceeded if some traversal is longer than
/// `max_len`.
inline Term traversal_normal_form(const ComputationTree& tree, std::size_t max_len) {
  TraversalSet set = enumerate_traversals(tree, max_len);
  if (!set.truncated.empty())
    throw BudgetExceeded(max_len, set.truncated.size(), "traversal length budget exhausted");
  std::vector<Traversal> cores;
  for (const Traversal& t : set.maximal) cores.push_back(core_projection(t));
  detail::NormalFormAssembler a{tree, cores, {}, {}, {}};
  for (const TreeNode& n : tree.nodes)
    if (n.is_var() && !n.binder) a.free_names.insert(n.name);
  std::vector<std::size_t> all(cores.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return a.lambda(all, 0);
}

// ---------------------------------------------------------------------------
// Uncovering and P-pointer reconstruction.
// ---------------------------------------------------------------------------

struct UncoveredPlay {
  struct Move {
    std::size_t node;
    std::optional<std::size_t> justifier;  // always none for P-moves
    Parity parity;
  };
  std::vector<Move> moves;
};

inline UncoveredPlay uncover(const Traversal& t) {
  UncoveredPlay p;
  for (const Occurrence& o : t)
    p.moves.push_back({o.node, o.parity == Parity::O ? o.justifier : std::nullopt, o.parity});
  return p;
}

struct ReconstructionError : Error {
  using Error::Error;
};

/// Re-justifies every P-occurrence: a variable points to the last lambda in
/// its P-view whose order is strictly greater than the variable's own. The
/// root counts as having unbounded order since it also stands for the
/// context binding free variables. Rule names are recomputed.
inline Traversal reconstruct_p_pointers(const UncoveredPlay& p, const ComputationTree& tree) {
  Traversal t;
  for (std::size_t i = 0; i < p.moves.size(); ++i) {
    const auto& m = p.moves[i];
    const TreeNode& n = tree[m.node];
    Occurrence o{m.node, std::nullopt, Rule::Lam, m.parity};
    if (m.parity == Parity::O) {
      o.justifier = m.justifier;
      if (i == 0) {
        o.rule = Rule::Root;
      } else {
        if (!m.justifier || *m.justifier >= i) throw ReconstructionError("O-move without a valid justifier");
        const TreeNode& prev = tree[t[i - 1].node];
        o.rule = prev.is_app() ? Rule::App : hereditarily_justified_by_root(t, i - 1) ? Rule::InputVar : Rule::Var;
      }
    } else if (n.is_var()) {
      if (i == 0) throw ReconstructionError("play starts with a P-move");
      auto view = p_view(tree, t, i);
      std::optional<std::size_t> pick;
      for (auto it = view.rbegin(); it != view.rend() && !pick; ++it)
        if (tree[t[*it].node].is_lambda() && (*it == 0 || tree[t[*it].node].order > n.order)) pick = *it;
      if (!pick) throw ReconstructionError("no candidate justifier for '" + n.name + "'");
      o.justifier = pick;
    }
    t.push_back(o);
  }
  return t;
}

// ---------------------------------------------------------------------------
// JSON.
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const ComputationTree& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const TreeNode& n = tree[i];
    nlohmann::json j{{"id", i}, {"label", tree.label(i)}, {"order", n.order}, {"children", n.children}};
    switch (n.kind) {
      case TreeNode::Kind::Lambda: {
        j["kind"] = "lambda";
        nlohmann::json bs = nlohmann::json::array();
        for (const Binder& b : n.binders) bs.push_back({{"name", b.name}, {"type", b.type.str()}});
        j["binders"] = bs;
        break;
      }
      case TreeNode::Kind::App:
        j["kind"] = "app";
        break;
      case TreeNode::Kind::Var:
        j["kind"] = "var";
        j["name"] = n.name;
        j["binder"] = n.binder ? nlohmann::json(*n.binder) : nlohmann::json("free");
        if (n.binder) j["binder_index"] = n.binder_index;
        break;
    }
    nodes.push_back(std::move(j));
  }
  return {{"nodes", nodes}};
}

inline nlohmann::json to_json(const Traversal& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const Occurrence& o : t)
    out.push_back({{"node", o.node},
                   {"justifier", o.justifier ? nlohmann::json(*o.justifier) : nlohmann::json("initial")},
                   {"rule", to_string(o.rule)},
                   {"parity", to_string(o.parity)}});
  return out;
}

}  // namespace safelc

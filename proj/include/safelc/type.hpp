// Simple types over the single ground atom `o`.
#pragma once

#include <algorithm>
#include <memory>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace safelc {

/// A curried simple type `A1 -> ... -> An -> o`. The ground type is the
/// value with no arguments. Values are immutable and cheap to copy.
class Type {
 public:
  Type() : node_(ground_node()) {}

  static Type ground() { return Type(); }

  static Type arrow(std::vector<Type> args, const Type& result = Type()) {
    // Flatten the result so that the representation is always curried-normal.
    args.insert(args.end(), result.args().begin(), result.args().end());
    if (args.empty()) return Type();
    return Type(std::make_shared<const Node>(std::move(args)));
  }

  static Type arrow(const Type& from, const Type& to) { return arrow(std::vector<Type>{from}, to); }

  std::span<const Type> args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  bool is_ground() const { return node_->args.empty(); }
  unsigned order() const { return node_->order; }

  /// The type left after applying `n` arguments.
  Type drop(std::size_t n) const {
    if (n == 0) return *this;
    if (n >= arity()) return Type();
    return Type(std::make_shared<const Node>(
        std::vector<Type>(node_->args.begin() + static_cast<std::ptrdiff_t>(n), node_->args.end())));
  }

  friend bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    if (a.arity() != b.arity() || a.order() != b.order()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (!(a.args()[i] == b.args()[i])) return false;
    return true;
  }

  std::string str() const {
    if (is_ground()) return "o";
    std::string out;
    for (const Type& a : args()) {
      out += a.is_ground() ? a.str() : "(" + a.str() + ")";
      out += " -> ";
    }
    return out + "o";
  }

  friend std::ostream& operator<<(std::ostream& os, const Type& t) { return os << t.str(); }

 private:
  struct Node {
    explicit Node(std::vector<Type> a) : args(std::move(a)) {
      for (const Type& t : args) order = std::max(order, t.order() + 1);
    }
    Node() = default;
    std::vector<Type> args;
    unsigned order = 0;
  };

  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static const std::shared_ptr<const Node>& ground_node() {
    static const std::shared_ptr<const Node> g = std::make_shared<const Node>();
    return g;
  }

  std::shared_ptr<const Node> node_;
};

inline unsigned order_of(const Type& t) { return t.order(); }

/// Argument orders are non-increasing, hereditarily.
inline bool homogeneity_check(const Type& t) {
  unsigned prev = ~0u;
  for (const Type& a : t.args()) {
    if (a.order() > prev || !homogeneity_check(a)) return false;
    prev = a.order();
  }
  return true;
}

/// The Church numeral type (o -> o) -> o -> o.
inline Type nat_type() {
  static const Type t = Type::arrow({Type::arrow({Type()}), Type()});
  return t;
}

}  // namespace safelc

// Brute-force QBF evaluation. Deliberately independent of the term-level
// reduction: it shares only the syntax tree.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "safelc/qbf.hpp"

namespace safelc {

namespace oracle_detail {

inline bool truth(const Formula& f, const std::map<std::string, bool>& env) {
  switch (f.kind) {
    case Formula::Kind::Var:
      return env.at(f.name);
    case Formula::Kind::Not:
      return !truth(*f.left, env);
    case Formula::Kind::And:
      return truth(*f.left, env) && truth(*f.right, env);
    case Formula::Kind::Or:
      return truth(*f.left, env) || truth(*f.right, env);
  }
  return false;
}

inline bool expand(const QBF& q, std::size_t i, std::map<std::string, bool>& env) {
  if (i == q.prefix.size()) return truth(*q.matrix, env);
  const auto& [quant, v] = q.prefix[i];
  env[v] = true;
  bool a = expand(q, i + 1, env);
  env[v] = false;
  bool b = expand(q, i + 1, env);
  return quant == Quantifier::ForAll ? a && b : a || b;
}

}  // namespace oracle_detail

inline bool eval_qbf(const QBF& q) {
  if (q.prefix.size() > 20) throw std::invalid_argument("too many quantifiers for exhaustive evaluation");
  std::map<std::string, bool> env;
  return oracle_detail::expand(q, 0, env);
}

}  // namespace safelc

// Reduction from QBF truth to beta-eta equality of closed safe terms.
//
// Booleans live at B = o -> o -> o. The matrix becomes the closed term
// M = \x1..xn:B. [phi] built with closed AND/OR/NOT combinators. Quantifiers
// are eliminated innermost first by closed combinators
//
//   Q_k : (B^k -> B) -> B^(k-1) -> B
//   forall: \G y1..y(k-1) t f. G y true (G y false t f) f
//   exists: \G y1..y(k-1) t f. G y true t (G y false t f)
//
// so the instance is Q_1 (Q_2 (... (Q_n M))). Every abstraction in it is
// closed, hence the whole term is Safe, and its size is O(n^2 + |phi|).
#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "safelc/qbf.hpp"
#include "safelc/qbf_oracle.hpp"
#include "safelc/reduction.hpp"
#include "safelc/syntax.hpp"

namespace safelc {

inline Type bool_type() { return Type::arrow({Type(), Type()}, Type()); }

inline Term church_bool(bool b) {
  return Term::abs({{"t", Type()}, {"f", Type()}}, Term::var(b ? "t" : "f"));
}

/// Size bound: |qbf_to_term(f)| <= kSizeConstant * |f|^kSizeExponent.
inline constexpr std::size_t kSizeConstant = 24;
inline constexpr unsigned kSizeExponent = 2;

namespace detail {

inline const Term& bool_and() {
  static const Term t = parse("\\p:o->o->o q:o->o->o t:o f:o. p (q t f) f");
  return t;
}

inline const Term& bool_or() {
  static const Term t = parse("\\p:o->o->o q:o->o->o t:o f:o. p t (q t f)");
  return t;
}

inline const Term& bool_not() {
  static const Term t = parse("\\p:o->o->o t:o f:o. p f t");
  return t;
}

inline Term matrix_term(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Var:
      return Term::var(f.name);
    case Formula::Kind::Not:
      return make_app(bool_not(), {matrix_term(*f.left)});
    case Formula::Kind::And:
      return make_app(bool_and(), {matrix_term(*f.left), matrix_term(*f.right)});
    case Formula::Kind::Or:
      return make_app(bool_or(), {matrix_term(*f.left), matrix_term(*f.right)});
  }
  throw Error("unreachable");
}

inline Term quantifier_combinator(Quantifier q, std::size_t k) {
  Type b = bool_type();
  Type g_type = Type::arrow(std::vector<Type>(k, b), b);
  std::vector<Binder> binders{{"G", g_type}};
  std::vector<Term> ys;
  for (std::size_t i = 1; i < k; ++i) {
    binders.push_back({"y" + std::to_string(i), b});
    ys.push_back(Term::var("y" + std::to_string(i)));
  }
  binders.push_back({"t", Type()});
  binders.push_back({"f", Type()});
  auto call = [&](bool value, Term on_true, Term on_false) {
    std::vector<Term> args = ys;
    args.push_back(church_bool(value));
    args.push_back(std::move(on_true));
    args.push_back(std::move(on_false));
    return Term::app(Term::var("G"), std::move(args));
  };
  Term second = call(false, Term::var("t"), Term::var("f"));
  Term body = q == Quantifier::ForAll ? call(true, second, Term::var("f")) : call(true, Term::var("t"), second);
  return Term::abs(std::move(binders), body);
}

}  // namespace detail

inline Term qbf_to_term(const QBF& q) {
  std::vector<Binder> xs;
  for (const auto& [_, v] : q.prefix) xs.push_back({v, bool_type()});
  Term t = detail::matrix_term(*q.matrix);
  if (!xs.empty()) t = make_abs(std::move(xs), t);
  for (std::size_t k = q.prefix.size(); k >= 1; --k) t = Term::app(detail::quantifier_combinator(q.prefix[k - 1].first, k), {t});
  return t;
}

/// (qbf_to_term(f), true): beta-eta equal iff f holds.
inline std::pair<Term, Term> equality_instance(const QBF& q) { return {qbf_to_term(q), church_bool(true)}; }

inline std::size_t size_bound(const QBF& q) {
  std::size_t s = q.size(), p = 1;
  for (unsigned i = 0; i < kSizeExponent; ++i) p *= s;
  return kSizeConstant * p;
}

inline std::vector<std::string> qbf_variable_names(std::size_t n) {
  static const std::vector<std::string> base = {"x", "y", "z", "u", "v", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(i < base.size() ? base[i] : "x" + std::to_string(i));
  return out;
}

/// Matrices over `vars` of depth exactly d, in spine form: depth 0 is a
/// variable, depth d is !phi or phi op l with phi of depth d-1 and l a
/// variable (d = 1) or a literal (d > 1).
inline std::vector<FormulaPtr> enumerate_matrices(const std::vector<std::string>& vars, std::size_t max_depth) {
  std::vector<FormulaPtr> atoms, literals;
  for (const std::string& v : vars) {
    atoms.push_back(Formula::var(v));
    literals.push_back(Formula::var(v));
  }
  for (const std::string& v : vars) literals.push_back(Formula::negate(Formula::var(v)));
  std::vector<FormulaPtr> all = atoms, layer = atoms;
  for (std::size_t d = 1; d <= max_depth; ++d) {
    const auto& right = d == 1 ? atoms : literals;
    std::vector<FormulaPtr> next;
    for (const FormulaPtr& f : layer) {
      next.push_back(Formula::negate(f));
      for (const FormulaPtr& r : right) {
        next.push_back(Formula::conj(f, r));
        next.push_back(Formula::disj(f, r));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

/// Every prefix over 1..max_quantifiers variables combined with every
/// enumerated matrix over the same variables.
inline std::vector<QBF> enumerate_qbfs(std::size_t max_quantifiers = 3, std::size_t max_depth = 3) {
  std::vector<QBF> out;
  for (std::size_t n = 1; n <= max_quantifiers; ++n) {
    std::vector<std::string> vars = qbf_variable_names(n);
    std::vector<FormulaPtr> matrices = enumerate_matrices(vars, max_depth);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      QBF q;
      for (std::size_t i = 0; i < n; ++i)
        q.prefix.emplace_back((mask >> i) & 1 ? Quantifier::Exists : Quantifier::ForAll, vars[i]);
      for (const FormulaPtr& m : matrices) {
        q.matrix = m;
        out.push_back(q);
      }
    }
  }
  return out;
}

/// Uniform random prefix and a random matrix of depth <= max_depth.
inline QBF random_qbf(std::mt19937_64& rng, std::size_t quantifiers = 3, std::size_t max_depth = 3) {
  std::vector<std::string> vars = qbf_variable_names(quantifiers);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::function<FormulaPtr(std::size_t)> gen = [&](std::size_t depth) -> FormulaPtr {
    if (depth == 0 || pick(4) == 0) return Formula::var(vars[pick(vars.size())]);
    switch (pick(3)) {
      case 0:
        return Formula::negate(gen(depth - 1));
      case 1:
        return Formula::conj(gen(depth - 1), gen(depth - 1));
      default:
        return Formula::disj(gen(depth - 1), gen(depth - 1));
    }
  };
  QBF q;
  for (const std::string& v : vars) q.prefix.emplace_back(pick(2) ? Quantifier::Exists : Quantifier::ForAll, v);
  q.matrix = gen(max_depth);
  return q;
}

struct BenchmarkInstance {
  std::string id;
  QBF formula;
  bool label;
  std::string lhs_file, rhs_file;
};

/// Writes one file pair per instance and a tab-separated manifest with a
/// leading `# seed` line.
inline std::vector<BenchmarkInstance> emit_benchmark(const std::filesystem::path& dir, const std::vector<QBF>& qbfs,
                                                     std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::vector<BenchmarkInstance> out;
  std::ofstream manifest(dir / "manifest.tsv");
  if (!manifest) throw Error("cannot write " + (dir / "manifest.tsv").string());
  manifest << "# seed " << seed << "\n# id\tformula\tlabel\tlhs\trhs\n";
  for (std::size_t i = 0; i < qbfs.size(); ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "inst%03zu", i);
    BenchmarkInstance b{id, qbfs[i], eval_qbf(qbfs[i]), std::string(id) + "_lhs.lam", std::string(id) + "_rhs.lam"};
    auto [lhs, rhs] = equality_instance(qbfs[i]);
    std::ofstream(dir / b.lhs_file) << "# " << to_string(b.formula) << "\n" << pretty(lhs) << "\n";
    std::ofstream(dir / b.rhs_file) << pretty(rhs) << "\n";
    manifest << b.id << '\t' << to_string(b.formula) << '\t' << (b.label ? "true" : "false") << '\t' << b.lhs_file
             << '\t' << b.rhs_file << '\n';
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace safelc

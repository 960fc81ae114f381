// Property suites over the hand corpus and generated terms. Shared by the
// `corpus` command and the acceptance runner.
#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "safelc/corpus.hpp"
#include "safelc/encodings.hpp"
#include "safelc/games.hpp"
#include "safelc/hardness.hpp"
#include "safelc/reduction.hpp"
#include "safelc/typing.hpp"

namespace safelc {

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  std::size_t jobs = 0;  // 0: one per hardware thread
  ReductionBudget budget;
  std::size_t generated = 1000;       // generated Safe terms for the reduction suites
  std::size_t games_generated = 250;  // generated closed terms for the games suites
  std::size_t random_polynomials = 1000;
  std::size_t traversal_max_len = 200;
  std::size_t pointer_max_len = 40;
};

struct SuiteReport {
  SuiteReport() = default;
  SuiteReport(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = false;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // budget exhausted
  std::size_t failed = 0;
  std::vector<std::string> notes;
  double seconds = 0;
};

struct NamedTerm {
  std::string name;
  TypeEnv env;
  Term term;
};

namespace detail {

inline std::size_t job_count(std::size_t jobs) {
  if (jobs) return jobs;
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

// Calls f(i) for i in [0, n) on `jobs` threads.
template <class F>
void parallel_for(std::size_t n, std::size_t jobs, F&& f) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) f(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < std::min(job_count(jobs), n); ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// Keeps the first few notes of each kind.
struct Notes {
  std::mutex mu;
  std::vector<std::pair<std::size_t, std::string>> items;
  void add(std::size_t key, std::string s) {
    std::lock_guard lock(mu);
    items.emplace_back(key, std::move(s));
  }
  std::vector<std::string> take(std::size_t limit = 5) {
    std::sort(items.begin(), items.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < items.size() && i < limit; ++i) out.push_back(items[i].second);
    return out;
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Corpora.
// ---------------------------------------------------------------------------

inline std::vector<NamedTerm> hand_terms(bool include_ill_typed = false) {
  std::vector<NamedTerm> out;
  for (const CorpusEntry& e : hand_corpus()) {
    if (!include_ill_typed && e.expected == SafetyLevel::IllTyped) continue;
    Judgment j = e.judgment();
    out.push_back({e.name, j.env, j.term});
  }
  return out;
}

inline std::vector<NamedTerm> hand_terms_at(SafetyLevel level) {
  std::vector<NamedTerm> out;
  for (const NamedTerm& t : hand_terms())
    if (safety_check(t.env, t.term).level == level) out.push_back(t);
  return out;
}

/// The first `count` Safe terms drawn from a seeded generator.
inline std::vector<NamedTerm> generated_safe_terms(std::uint64_t seed, std::size_t count) {
  TermGenerator gen(seed);
  std::vector<NamedTerm> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    if (i > 200 * count + 1000) throw Error("generator produced too few safe terms");
    Term t = gen.closed_term().term;
    if (safety_check(t).level == SafetyLevel::Safe) out.push_back({"gen-" + std::to_string(i), {}, t});
  }
  return out;
}

/// Safe hand-corpus terms followed by generated Safe terms.
inline std::vector<NamedTerm> safe_corpus(const SuiteOptions& o) {
  std::vector<NamedTerm> out = hand_terms_at(SafetyLevel::Safe);
  for (NamedTerm& t : generated_safe_terms(o.seed, o.generated)) out.push_back(std::move(t));
  return out;
}

/// Closed, well-typed hand terms plus generated closed terms (safe or not).
inline std::vector<NamedTerm> games_corpus(const SuiteOptions& o) {
  std::vector<NamedTerm> out;
  for (const NamedTerm& t : hand_terms())
    if (t.env.empty()) out.push_back(t);
  TermGenerator gen(o.seed + 1);
  for (std::size_t i = 0; i < o.games_generated; ++i) out.push_back({"gen-" + std::to_string(i), {}, gen.closed_term().term});
  return out;
}

inline unsigned term_order(const NamedTerm& t) { return order_of(simple_type_of(t.env, t.term)); }

// ---------------------------------------------------------------------------
// Reduction.
// ---------------------------------------------------------------------------

/// Safe-strategy normalization never captures.
inline SuiteReport no_capture_suite(const SuiteOptions& o) {
  detail::Timer timer;
  SuiteReport r{"no-capture"};
  auto terms = safe_corpus(o);
  std::atomic<std::size_t> checked{0}, skipped{0}, failed{0};
  detail::Notes notes;
  detail::parallel_for(terms.size(), o.jobs, [&](std::size_t i) {
    try {
      normalize(terms[i].term, Strategy::Safe, o.budget);
      ++checked;
    } catch (const ContractViolation& e) {
      ++failed;
      notes.add(i, terms[i].name + ": " + e.what());
    } catch (const BudgetExceeded&) {
      ++skipped;
    }
  });
  r.checked = checked;
  r.skipped = skipped;
  r.failed = failed;
  r.notes = notes.take();
  r.notes.push_back(std::to_string(terms.size() - o.generated) + " hand terms, " + std::to_string(o.generated) +
                    " generated");
  r.passed = r.failed == 0 && r.checked >= o.generated;
  r.seconds = timer.seconds();
  return r;
}

struct AdequacyWitness {
  std::string name;
  Term term;
  Term unsafe_intermediate;
  std::size_t plain_step = 0;
};

/// Looks for a Safe term with an UnsafeTypable plain-beta intermediate whose
/// safe-reduction intermediates all pass the safety check.
inline std::optional<AdequacyWitness> find_adequacy_witness(const std::vector<NamedTerm>& terms) {
  const ReductionBudget small{500, 20000};
  for (const NamedTerm& t : terms) {
    std::optional<AdequacyWitness> w;
    try {
      reduction_sequence(t.term, Strategy::Plain, small, [&](const Term& u, std::size_t i) {
        if (!w && safety_check(t.env, u).level == SafetyLevel::UnsafeTypable) w = AdequacyWitness{t.name, t.term, u, i};
      });
      if (!w) continue;
      bool safe_ok = true;
      reduction_sequence(t.term, Strategy::Safe, small, [&](const Term& u, std::size_t) {
        SafetyLevel l = safety_check(t.env, u).level;
        safe_ok = safe_ok && (l == SafetyLevel::Safe || l == SafetyLevel::AlmostSafe);
      });
      if (safe_ok) return w;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

/// Plain and safe normal forms agree; a witness of non-preservation by plain
/// beta exists.
inline SuiteReport adequacy_suite(const SuiteOptions& o) {
  detail::Timer timer;
  SuiteReport r{"adequacy"};
  auto terms = safe_corpus(o);
  std::atomic<std::size_t> checked{0}, skipped{0}, failed{0};
  detail::Notes notes;
  detail::parallel_for(terms.size(), o.jobs, [&](std::size_t i) {
    try {
      Term a = normalize(terms[i].term, Strategy::Plain, o.budget);
      Term b = normalize(terms[i].term, Strategy::Safe, o.budget);
      if (alpha_eq(a, b)) {
        ++checked;
      } else {
        ++failed;
        notes.add(i, terms[i].name + ": normal forms differ");
      }
    } catch (const BudgetExceeded&) {
      ++skipped;
    } catch (const ContractViolation& e) {
      ++failed;
      notes.add(i, terms[i].name + ": " + e.what());
    }
  });
  r.checked = checked;
  r.skipped = skipped;
  r.failed = failed;
  r.notes = notes.take();
  auto w = find_adequacy_witness(terms);
  if (w)
    r.notes.push_back("witness " + w->name + ": " + pretty(w->term) + " ->" + std::to_string(w->plain_step) + " " +
                      pretty(w->unsafe_intermediate) + " (UnsafeTypable)");
  else
    r.notes.push_back("no witness found");
  r.passed = r.failed == 0 && w.has_value();
  r.seconds = timer.seconds();
  return r;
}

/// Every safe-reduction intermediate of a Safe term is Safe or AlmostSafe.
inline SuiteReport preservation_suite(const SuiteOptions& o) {
  detail::Timer timer;
  SuiteReport r{"safety-preservation"};
  auto terms = safe_corpus(o);
  std::atomic<std::size_t> checked{0}, skipped{0}, failed{0}, almost{0};
  detail::Notes notes;
  detail::parallel_for(terms.size(), o.jobs, [&](std::size_t i) {
    const NamedTerm& t = terms[i];
    bool bad = false;
    try {
      reduction_sequence(t.term, Strategy::Safe, {2000, 100000}, [&](const Term& u, std::size_t k) {
        SafetyLevel l = safety_check(t.env, u).level;
        if (l == SafetyLevel::AlmostSafe) {
          ++almost;
          notes.add(i, t.name + " step " + std::to_string(k) + " AlmostSafe: " + pretty(u));
        } else if (l != SafetyLevel::Safe && !bad) {
          bad = true;
          notes.add(i, t.name + " step " + std::to_string(k) + " " + to_string(l) + ": " + pretty(u));
        }
      });
      bad ? ++failed : ++checked;
    } catch (const BudgetExceeded&) {
      ++skipped;
    } catch (const ContractViolation& e) {
      ++failed;
      notes.add(i, t.name + ": " + e.what());
    }
  });
  r.checked = checked;
  r.skipped = skipped;
  r.failed = failed;
  r.notes = notes.take(3);
  r.notes.push_back(std::to_string(almost.load()) + " AlmostSafe intermediates");
  r.passed = r.failed == 0;
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Encodings.
// ---------------------------------------------------------------------------

/// All single monomials c*m (c in 1..5, deg m <= 3) over x, y, z, the zero
/// polynomial in 0..3 variables, and seeded random sums of such monomials.
inline std::vector<Polynomial> polynomial_test_set(std::uint64_t seed, std::size_t random_count = 200) {
  std::vector<std::vector<unsigned>> monos;
  for (unsigned a = 0; a <= 3; ++a)
    for (unsigned b = 0; a + b <= 3; ++b)
      for (unsigned c = 0; a + b + c <= 3; ++c) monos.push_back({a, b, c});
  auto empty = [](std::size_t k) {
    Polynomial p;
    p.variables.assign({"x", "y", "z"});
    p.variables.resize(k);
    return p;
  };
  auto restrict = [](std::vector<unsigned> e, std::size_t k) {
    e.resize(k);
    return e;
  };
  auto fits = [](const std::vector<unsigned>& e, std::size_t k) {
    for (std::size_t i = k; i < e.size(); ++i)
      if (e[i]) return false;
    return true;
  };
  std::vector<Polynomial> out;
  for (std::size_t k = 0; k <= 3; ++k) out.push_back(empty(k));
  for (const auto& m : monos) {
    std::size_t k = 3;
    while (k > 0 && m[k - 1] == 0) --k;
    for (std::uint64_t c = 1; c <= 5; ++c) {
      Polynomial p = empty(k);
      p.add(restrict(m, k), c);
      out.push_back(p);
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) {
    std::size_t k = 1 + rng() % 3;
    Polynomial p = empty(k);
    std::size_t terms = 1 + rng() % 5;
    for (std::size_t j = 0; j < terms; ++j) {
      const auto& m = monos[rng() % monos.size()];
      if (!fits(m, k)) continue;
      p.add(restrict(m, k), 1 + rng() % 5);
    }
    // Coefficients of repeated monomials are capped at 5.
    for (auto& [_, c] : p.monomials) c = std::min<std::uint64_t>(c, 5);
    out.push_back(p);
  }
  return out;
}

inline SuiteReport polynomial_suite(const SuiteOptions& o) {
  detail::Timer timer;
  SuiteReport r{"polynomials"};
  auto polys = polynomial_test_set(o.seed, o.random_polynomials);
  std::atomic<std::size_t> checked{0}, skipped{0}, failed{0};
  detail::Notes notes;
  detail::parallel_for(polys.size(), o.jobs, [&](std::size_t i) {
    const Polynomial& p = polys[i];
    Term t = compile_polynomial(p);
    if (safety_check(t).level != SafetyLevel::Safe) {
      ++failed;
      notes.add(i, "not Safe: " + p.str());
      return;
    }
    std::size_t k = p.variables.size(), total = 1;
    for (std::size_t j = 0; j < k; ++j) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<std::uint64_t> at;
      for (std::size_t j = 0, c = code; j < k; ++j, c /= 4) at.push_back(c % 4);
      try {
        std::uint64_t got = run_polynomial(t, at, Strategy::Safe, o.budget);
        if (got == p.evaluate(at)) {
          ++checked;
        } else {
          ++failed;
          notes.add(i, p.str() + " at tuple " + std::to_string(code) + ": " + std::to_string(got));
        }
      } catch (const BudgetExceeded&) {
        ++skipped;
      }
    }
  });
  r.checked = checked;
  r.skipped = skipped;
  r.failed = failed;
  r.notes = notes.take();
  r.notes.push_back(std::to_string(polys.size()) + " polynomials");

  // Conditional candidates: non-Safe, yet real conditionals.
  std::size_t candidates_ok = 0;
  auto cands = conditional_candidates();
  for (const auto& c : cands) {
    bool ok = c.verdict.level != SafetyLevel::Safe && c.verdict.level != SafetyLevel::IllTyped;
    for (std::uint64_t n = 0; n <= 3 && ok; ++n) {
      std::uint64_t got =
          decode_nat(normalize(make_app(c.term, {church_nat(n), church_nat(7), church_nat(2)}), Strategy::Plain, o.budget));
      ok = got == (n == 0 ? 7u : 2u);
    }
    if (ok) ++candidates_ok;
    else r.notes.push_back("conditional candidate " + c.name + " misbehaves");
  }
  r.notes.push_back(std::to_string(candidates_ok) + "/" + std::to_string(cands.size()) +
                    " conditional candidates non-Safe and correct");
  r.passed = r.failed == 0 && candidates_ok == cands.size() && cands.size() >= 3;
  r.seconds = timer.seconds();
  return r;
}

inline std::vector<std::string> all_words(const std::string& alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  for (std::size_t begin = 0, len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    begin = end;
  }
  return out;
}

inline SuiteReport word_suite(const SuiteOptions& o) {
  detail::Timer timer;
  SuiteReport r{"word-functions"};
  const std::string alphabet = "ab";
  auto words = all_words(alphabet, 6);
  auto catalogue = word_function_catalogue();
  std::atomic<std::size_t> checked{0}, failed{0}, skipped{0};
  detail::Notes notes;
  detail::parallel_for(catalogue.size(), o.jobs, [&](std::size_t i) {
    const auto& [name, f] = catalogue[i];
    Term t = compile_word_function(f, alphabet);
    if (safety_check(t).level != SafetyLevel::Safe) {
      ++failed;
      notes.add(i, name + " is not Safe");
      return;
    }
    for (const std::string& w : words) {
      try {
        Word got = run_word_function(t, Word(alphabet, w), Strategy::Safe, o.budget);
        if (got.letters == evaluate_word_function(f, w)) {
          ++checked;
        } else {
          ++failed;
          notes.add(i, name + " on '" + w + "' gives '" + got.letters + "'");
        }
      } catch (const BudgetExceeded&) {
        ++skipped;
      }
    }
  });
  std::size_t encode_ok = 0;
  for (const std::string& w : words) {
    Term t = church_word(Word(alphabet, w));
    if (safety_check(t).level == SafetyLevel::Safe && decode_word(t, alphabet).letters == w) ++encode_ok;
  }
  r.checked = checked;
  r.skipped = skipped;
  r.failed = failed + (words.size() - encode_ok);
  r.notes = notes.take();
  r.notes.push_back(std::to_string(catalogue.size()) + " functions x " + std::to_string(words.size()) + " words");
  r.passed = r.failed == 0 && r.skipped == 0;
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Hardness.
// ---------------------------------------------------------------------------

struct QbfSweep {
  std::size_t instances = 0;
  std::size_t disagreements = 0;
  std::size_t unsafe = 0;
  std::size_t over_bound = 0;
  double fitted_exponent = 0;
};

inline SuiteReport qbf_suite(const SuiteOptions& o) {
  detail::Timer timer;
  SuiteReport r{"qbf-reduction"};
  auto qbfs = enumerate_qbfs(3, 3);
  std::vector<std::size_t> sizes(qbfs.size());
  std::atomic<std::size_t> checked{0}, skipped{0}, failed{0}, unsafe{0}, over{0};
  detail::Notes notes;
  detail::parallel_for(qbfs.size(), o.jobs, [&](std::size_t i) {
    const QBF& q = qbfs[i];
    auto [lhs, rhs] = equality_instance(q);
    sizes[i] = lhs.size();
    if (lhs.size() > size_bound(q)) ++over;
    if (safety_check(lhs).level != SafetyLevel::Safe || safety_check(rhs).level != SafetyLevel::Safe) {
      ++unsafe;
      notes.add(i, "unsafe instance: " + to_string(q));
    }
    try {
      if (beta_eta_equal(lhs, rhs, o.budget) == eval_qbf(q)) {
        ++checked;
      } else {
        ++failed;
        notes.add(i, "disagreement: " + to_string(q));
      }
    } catch (const BudgetExceeded&) {
      ++skipped;
    }
  });
  // Least-squares slope of log(max term size) against log(formula size).
  std::map<std::size_t, std::size_t> worst;
  for (std::size_t i = 0; i < qbfs.size(); ++i) worst[qbfs[i].size()] = std::max(worst[qbfs[i].size()], sizes[i]);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = static_cast<double>(worst.size());
  for (const auto& [s, t] : worst) {
    double x = std::log(static_cast<double>(s)), y = std::log(static_cast<double>(t));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = n > 1 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0;
  r.checked = checked;
  r.skipped = skipped;
  r.failed = failed + unsafe + over;
  r.notes = notes.take();
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu instances, size exponent %.2f (bound %u), %zu over size bound", qbfs.size(),
                slope, kSizeExponent, over.load());
  r.notes.push_back(buf);
  r.passed = r.failed == 0 && r.skipped == 0 && slope <= kSizeExponent;
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Games.
// ---------------------------------------------------------------------------

inline SuiteReport traversal_suite(const SuiteOptions& o) {
  detail::Timer timer;
  SuiteReport r{"traversal-correspondence"};
  auto terms = games_corpus(o);
  std::atomic<std::size_t> checked{0}, skipped{0}, failed{0};
  detail::Notes notes;
  detail::parallel_for(terms.size(), o.jobs, [&](std::size_t i) {
    const NamedTerm& t = terms[i];
    try {
      Term expected = eta_long(t.env, normalize(t.term, Strategy::Plain, o.budget));
      Term got = traversal_normal_form(build_computation_tree(t.env, t.term), o.traversal_max_len);
      if (alpha_eq(got, expected)) {
        ++checked;
      } else {
        ++failed;
        notes.add(i, t.name + ": " + pretty(got) + " vs " + pretty(expected));
      }
    } catch (const BudgetExceeded&) {
      ++skipped;
    } catch (const Error& e) {
      ++failed;
      notes.add(i, t.name + ": " + e.what());
    }
  });
  r.checked = checked;
  r.skipped = skipped;
  r.failed = failed;
  r.notes = notes.take();
  r.notes.push_back(std::to_string(terms.size()) + " closed terms");
  r.passed = r.failed == 0 && r.checked >= 200;
  r.seconds = timer.seconds();
  return r;
}

struct PointerCheck {
  std::size_t traversals = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
};

/// reconstruct(uncover(t)) == t for every traversal up to `max_len`
/// (maximal and cut-off ones).
inline PointerCheck check_pointer_reconstruction(const NamedTerm& t, std::size_t max_len) {
  PointerCheck c;
  ComputationTree tree = build_computation_tree(t.env, t.term);
  TraversalSet set = enumerate_traversals(tree, max_len);
  for (const auto* group : {&set.maximal, &set.truncated}) {
    for (const Traversal& tr : *group) {
      ++c.traversals;
      bool same = false;
      try {
        same = reconstruct_p_pointers(uncover(tr), tree) == tr;
      } catch (const ReconstructionError&) {
      }
      if (same) continue;
      if (++c.mismatches == 1) {
        std::string src = pretty(t.term);
        if (src.size() > 120) src = src.substr(0, 120) + " ...";
        c.first_mismatch = t.name + ": " + src;
      }
    }
  }
  return c;
}

struct PointerSuites {
  SuiteReport safe_terms;     // all Safe corpus terms
  SuiteReport low_order;      // all corpus terms of order <= 3
  SuiteReport order4_witness; // an unsafe order-4 term that needs its pointers
};

inline PointerSuites pointer_suites(const SuiteOptions& o) {
  detail::Timer timer;
  auto terms = games_corpus(o);
  std::vector<SafetyLevel> level(terms.size());
  std::vector<unsigned> order(terms.size());
  std::vector<std::optional<PointerCheck>> checks(terms.size());
  detail::parallel_for(terms.size(), o.jobs, [&](std::size_t i) {
    level[i] = safety_check(terms[i].env, terms[i].term).level;
    order[i] = term_order(terms[i]);
    try {
      checks[i] = check_pointer_reconstruction(terms[i], o.pointer_max_len);
    } catch (const BudgetExceeded&) {
    }
  });
  PointerSuites s{{"p-pointers-safe"}, {"p-pointers-order<=3"}, {"p-pointers-order4-witness"}};
  auto tally = [&](SuiteReport& r, auto pred) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!pred(i)) continue;
      if (!checks[i]) {
        ++r.skipped;
        continue;
      }
      r.checked += checks[i]->traversals;
      if (checks[i]->mismatches) {
        ++r.failed;
        if (r.notes.size() < 5)
          r.notes.push_back(checks[i]->first_mismatch + " [" + to_string(level[i]) + ", order " +
                            std::to_string(order[i]) + "]");
      }
    }
    r.passed = r.failed == 0;
  };
  tally(s.safe_terms, [&](std::size_t i) { return level[i] == SafetyLevel::Safe; });
  tally(s.low_order, [&](std::size_t i) { return order[i] <= 3; });
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (order[i] != 4 || level[i] == SafetyLevel::Safe || !checks[i]) continue;
    ++s.order4_witness.checked;
    if (checks[i]->mismatches && s.order4_witness.notes.empty())
      s.order4_witness.notes.push_back("witness " + checks[i]->first_mismatch);
  }
  s.order4_witness.passed = !s.order4_witness.notes.empty();
  if (!s.order4_witness.passed) s.order4_witness.notes.push_back("no witness found");
  s.safe_terms.seconds = s.low_order.seconds = s.order4_witness.seconds = timer.seconds();
  return s;
}

// ---------------------------------------------------------------------------
// Verdicts.
// ---------------------------------------------------------------------------

inline SuiteReport verdict_suite() {
  detail::Timer timer;
  SuiteReport r{"verdict-regression"};
  for (const CorpusEntry& e : hand_corpus()) {
    Judgment j = e.judgment();
    SafetyLevel got = safety_check(j.env, j.term).level;
    if (got == e.expected) {
      ++r.checked;
    } else {
      ++r.failed;
      r.notes.push_back(e.name + ": expected " + to_string(e.expected) + ", got " + to_string(got));
    }
  }
  r.notes.push_back(std::to_string(hand_corpus().size()) + " labelled terms");
  r.passed = r.failed == 0 && hand_corpus().size() >= 30;
  r.seconds = timer.seconds();
  return r;
}

}  // namespace safelc

// safelc: command-line workbench for the safe lambda calculus.
//
// Exit codes: 0 ok, 1 negative verdict, 2 usage or input error,
// 3 budget exhausted, 4 contract violation.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "safelc/safelc.hpp"

using namespace safelc;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3, kContract = 4 };

struct UsageError : Error {
  using Error::Error;
};

struct Globals {
  bool json = false;
  bool raw = false;
  std::uint64_t seed = 20240611;
  std::size_t jobs = 0;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops `#` comment lines.
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t");
    if (p != std::string::npos && line[p] == '#') continue;
    out += line + "\n";
  }
  return out;
}

Judgment load(const std::string& path, const Globals& g) {
  return parse_judgment(strip_comments(read_input(path)), !g.raw);
}

std::string trace_line(const RuleApplication& r) {
  std::string s = r.rule + " " + (r.location.empty() ? "/" : r.location) + " : " + r.type.str() + "  ord " +
                  std::to_string(r.term_order) + "  fv {";
  for (std::size_t i = 0; i < r.free_var_orders.size(); ++i)
    s += (i ? ", " : "") + r.free_var_orders[i].first + ":" + std::to_string(r.free_var_orders[i].second);
  s += "}";
  if (!r.ok) s += "  FAIL" + (r.violating_var ? " at " + *r.violating_var + ":" + std::to_string(*r.violating_order) : "");
  return s;
}

json trace_json(const RuleApplication& r) {
  json fv = json::object();
  for (const auto& [n, o] : r.free_var_orders) fv[n] = o;
  json j{{"rule", r.rule}, {"location", r.location}, {"type", r.type.str()},
         {"order", r.term_order}, {"free_var_orders", fv}, {"ok", r.ok}};
  if (r.violating_var) j["violating_var"] = *r.violating_var;
  return j;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "plain") return Strategy::Plain;
  if (s == "safe") return Strategy::Safe;
  throw UsageError("unknown strategy '" + s + "'");
}

// ---------------------------------------------------------------------------

int cmd_check(const Globals& g, const std::string& file) {
  Judgment j = load(file, g);
  SafetyVerdict v = safety_check(j.env, j.term);
  if (g.json) {
    json out{{"level", to_string(v.level)}, {"term", pretty(j.term)}};
    out["type"] = v.type ? json(v.type->str()) : json(nullptr);
    if (!v.error.empty()) out["error"] = v.error;
    out["trace"] = json::array();
    for (const auto& r : v.trace) out["trace"].push_back(trace_json(r));
    std::cout << out.dump(2) << "\n";
  } else {
    if (v.type)
      std::cout << to_string(v.level) << " : " << v.type->str() << "\n";
    else
      std::cout << to_string(v.level) << ": " << v.error << "\n";
    for (const auto& r : v.trace) std::cout << "  " << trace_line(r) << "\n";
  }
  return v.level == SafetyLevel::Safe ? kOk : kNegative;
}

int cmd_normalize(const Globals& g, const std::string& file, const std::string& strategy, const ReductionBudget& b,
                  bool trace) {
  Judgment j = load(file, g);
  simple_type_of(j.env, j.term);
  Strategy s = parse_strategy(strategy);
  json steps = json::array();
  std::size_t count = 0;
  Term nf = reduction_sequence(j.term, s, b, [&](const Term& t, std::size_t i) {
    count = i;
    if (!trace) return;
    if (g.json)
      steps.push_back(pretty(t));
    else
      std::cout << i << ": " << pretty(t) << "\n";
  });
  if (g.json) {
    json out{{"normal_form", pretty(nf)}, {"steps", count}, {"strategy", to_string(s)}};
    if (trace) out["trace"] = steps;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << pretty(nf) << "\n";
    if (trace) std::cout << count << " steps\n";
  }
  return kOk;
}

int cmd_eq(const Globals& g, const std::string& a, const std::string& b, const ReductionBudget& budget) {
  Judgment ja = load(a, g), jb = load(b, g);
  TypeEnv env = ja.env;
  env.insert(jb.env.begin(), jb.env.end());
  bool equal = false;
  std::string note;
  Type ta = simple_type_of(env, ja.term), tb = simple_type_of(env, jb.term);
  if (ta == tb)
    equal = beta_eta_equal(env, ja.term, jb.term, budget);
  else
    note = "types differ: " + ta.str() + " vs " + tb.str();
  if (g.json) {
    json out{{"equal", equal}};
    if (!note.empty()) out["note"] = note;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (equal ? "beta-eta equal" : "not beta-eta equal") << (note.empty() ? "" : " (" + note + ")") << "\n";
  }
  return equal ? kOk : kNegative;
}

std::vector<std::uint64_t> parse_assignment(const std::string& text, const Polynomial& p) {
  std::map<std::string, std::uint64_t> given;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected name=value in '" + item + "'");
    std::string name = item.substr(0, eq);
    if (std::find(p.variables.begin(), p.variables.end(), name) == p.variables.end())
      throw UsageError("'" + name + "' is not a variable of the polynomial");
    try {
      given[name] = std::stoull(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad value in '" + item + "'");
    }
  }
  std::vector<std::uint64_t> at;
  for (const std::string& v : p.variables) {
    if (!given.count(v)) throw UsageError("no value given for '" + v + "'");
    at.push_back(given[v]);
  }
  return at;
}

int cmd_poly(const Globals& g, const std::string& text, const std::string& at_text, bool emit, const ReductionBudget& b) {
  Polynomial p = parse_polynomial(text);
  Term t = compile_polynomial(p);
  SafetyLevel level = safety_check(t).level;
  json out{{"polynomial", p.str()}, {"variables", p.variables}, {"safety", to_string(level)}};
  if (emit) out["term"] = pretty(t);
  int code = kOk;
  if (!at_text.empty()) {
    auto at = parse_assignment(at_text, p);
    std::uint64_t got = run_polynomial(t, at, Strategy::Safe, b), expected = p.evaluate(at);
    out["value"] = got;
    out["oracle"] = expected;
    if (got != expected) code = kContract;
  }
  if (g.json) {
    std::cout << out.dump(2) << "\n";
    return code;
  }
  std::cout << p.str() << "  [" << to_string(level) << "]\n";
  if (emit) std::cout << pretty(t) << "\n";
  if (!at_text.empty())
    std::cout << "value " << out["value"] << "; oracle " << (code == kOk ? "agrees" : "says " + out["oracle"].dump())
              << "\n";
  return code;
}

int cmd_word(const Globals& g, const std::string& alphabet, const std::string& spec_file, const std::string& input,
             const ReductionBudget& b) {
  WordFunction f = parse_word_function(read_input(spec_file));
  Word w(alphabet, input);
  std::string expected = evaluate_word_function(f, input);
  json out{{"function", f.str()}, {"input", input}, {"oracle", expected}};
  std::optional<Term> t;
  try {
    t = compile_word_function(f, alphabet);
  } catch (const UnrepresentableError& e) {
    out["representable"] = false;
    out["error"] = e.what();
    if (g.json)
      std::cout << out.dump(2) << "\n";
    else
      std::cout << "not representable: " << e.what() << "\n";
    return kNegative;
  }
  std::string got = run_word_function(*t, w, Strategy::Safe, b).letters;
  out["representable"] = true;
  out["output"] = got;
  out["safety"] = to_string(safety_check(*t).level);
  int code = got == expected ? kOk : kContract;
  if (g.json)
    std::cout << out.dump(2) << "\n";
  else
    std::cout << '"' << got << "\"; oracle " << (code == kOk ? "agrees" : "says \"" + expected + "\"") << "\n";
  return code;
}

// Reads back the boolean a normal form denotes, if any.
std::optional<bool> church_value(const Term& nf) {
  if (alpha_eq(nf, church_bool(true))) return true;
  if (alpha_eq(nf, church_bool(false))) return false;
  return std::nullopt;
}

int cmd_qbf(const Globals& g, const std::string& text, std::size_t random, const std::string& emit_dir,
            const ReductionBudget& b) {
  std::vector<QBF> qbfs;
  if (random) {
    std::mt19937_64 rng(g.seed);
    for (std::size_t i = 0; i < random; ++i) qbfs.push_back(random_qbf(rng));
  } else {
    if (text.empty()) throw UsageError("give a formula or --random N");
    qbfs.push_back(parse_qbf(text));
  }
  if (!emit_dir.empty()) emit_benchmark(emit_dir, qbfs, g.seed);

  int code = kOk;
  json results = json::array();
  for (const QBF& q : qbfs) {
    Term lhs = qbf_to_term(q);
    std::optional<bool> value = church_value(eta_long(normalize(lhs, Strategy::Plain, b)));
    bool oracle = eval_qbf(q);
    bool agrees = value && *value == oracle;
    if (!agrees) code = kContract;
    else if (!oracle && qbfs.size() == 1) code = kNegative;
    if (g.json) {
      results.push_back({{"formula", to_string(q)},
                         {"oracle", oracle},
                         {"term_value", value ? json(*value) : json(nullptr)},
                         {"term_size", lhs.size()},
                         {"safety", to_string(safety_check(lhs).level)},
                         {"agrees", agrees}});
      continue;
    }
    if (qbfs.size() > 1) std::cout << to_string(q) << ": ";
    std::cout << (oracle ? "true" : "false") << "; term normalizes to "
              << (value ? (*value ? "church true" : "church false") : "a non-boolean") << "; oracle "
              << (agrees ? "agrees" : "disagrees") << "\n";
  }
  if (g.json) std::cout << (qbfs.size() == 1 ? results[0] : results).dump(2) << "\n";
  if (!emit_dir.empty() && !g.json) std::cout << "wrote " << qbfs.size() << " instances to " << emit_dir << "\n";
  return code;
}

std::string show_traversal(const ComputationTree& tree, const Traversal& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += "  ";
    s += std::to_string(i) + ":" + tree.label(t[i].node);
    s += t[i].justifier ? "^" + std::to_string(*t[i].justifier) : "";
    s += std::string("[") + to_string(t[i].rule) + "," + to_string(t[i].parity) + "]";
  }
  return s;
}

int cmd_traverse(const Globals& g, const std::string& file, std::size_t max_len, bool views) {
  Judgment j = load(file, g);
  ComputationTree tree = build_computation_tree(j.env, j.term);
  TraversalSet set = enumerate_traversals(tree, max_len);
  std::optional<Term> nf;
  if (set.truncated.empty()) nf = traversal_normal_form(tree, max_len);
  if (g.json) {
    json out{{"tree", to_json(tree)}, {"maximal", json::array()}, {"truncated", set.truncated.size()}};
    for (const Traversal& t : set.maximal) {
      json jt{{"occurrences", to_json(t)}};
      if (views) jt["p_view"] = p_view(tree, t);
      out["maximal"].push_back(jt);
    }
    out["normal_form"] = nf ? json(pretty(*nf)) : json(nullptr);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "tree (" << tree.size() << " nodes):\n";
    for (std::size_t i = 0; i < tree.size(); ++i) {
      std::cout << "  " << i << " " << tree.label(i) << " ord " << tree[i].order;
      if (tree[i].parent) std::cout << " parent " << *tree[i].parent;
      std::cout << "\n";
    }
    std::cout << set.maximal.size() << " maximal traversals";
    if (!set.truncated.empty()) std::cout << ", " << set.truncated.size() << " cut at length " << max_len;
    std::cout << "\n";
    for (const Traversal& t : set.maximal) {
      std::cout << "  " << show_traversal(tree, t) << "\n";
      if (views) {
        std::cout << "    P-view:";
        for (std::size_t k : p_view(tree, t)) std::cout << " " << k;
        std::cout << "\n";
      }
    }
    if (nf) std::cout << "normal form: " << pretty(*nf) << "\n";
  }
  return nf ? kOk : kBudget;
}

int cmd_corpus(const Globals& g, const ReductionBudget& b, std::size_t max_len) {
  SuiteOptions o;
  o.seed = g.seed;
  o.jobs = g.jobs;
  o.budget = b;
  o.traversal_max_len = max_len;
  std::vector<SuiteReport> reports{verdict_suite(),      no_capture_suite(o), adequacy_suite(o),
                                   preservation_suite(o), polynomial_suite(o), word_suite(o),
                                   qbf_suite(o),          traversal_suite(o)};
  PointerSuites ps = pointer_suites(o);
  for (SuiteReport* r : {&ps.safe_terms, &ps.low_order, &ps.order4_witness}) reports.push_back(*r);

  bool all = true;
  json out = json::array();
  for (const auto& r : reports) {
    all = all && r.passed;
    out.push_back({{"suite", r.name}, {"passed", r.passed}, {"checked", r.checked}, {"skipped", r.skipped},
                   {"failed", r.failed}, {"seconds", r.seconds}, {"notes", r.notes}});
  }
  if (g.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("%-28s %-5s %8s %8s %7s %8s\n", "suite", "", "checked", "skipped", "failed", "seconds");
    for (const auto& r : reports)
      std::printf("%-28s %-5s %8zu %8zu %7zu %8.2f\n", r.name.c_str(), r.passed ? "ok" : "FAIL", r.checked, r.skipped,
                  r.failed, r.seconds);
    for (const auto& r : reports)
      for (const auto& n : r.notes) std::cout << r.name << ": " << n << "\n";
  }
  return all ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"safelc: safe lambda calculus workbench"};
  app.require_subcommand(1);
  Globals g;
  ReductionBudget budget;
  std::size_t max_len = 200;

  auto add_globals = [&](CLI::App* a) {
    a->add_flag("--json", g.json, "Structured output");
    a->add_flag("--raw", g.raw, "Keep parenthesised blocks separate when parsing");
    a->add_option("--seed", g.seed, "Seed for generators");
    a->add_option("--jobs", g.jobs, "Worker threads (0: all cores)");
  };
  add_globals(&app);
  auto add_budget = [&](CLI::App* a) {
    a->add_option("--max-steps", budget.max_steps, "Reduction step budget")->capture_default_str();
    a->add_option("--max-size", budget.max_term_size, "Term size budget")->capture_default_str();
  };

  std::string file, file2, strategy = "plain", text, at, alphabet = "ab", spec, input, emit_dir;
  bool trace = false, emit = false, views = false;
  std::size_t random = 0;

  auto* check = app.add_subcommand("check", "Safety verdict, type and derivation trace");
  check->add_option("file", file, "Term file ('-' for stdin)")->required();

  auto* norm = app.add_subcommand("normalize", "Beta-normal form");
  norm->add_option("file", file)->required();
  norm->add_option("--strategy", strategy, "plain or safe")->capture_default_str();
  norm->add_flag("--trace", trace, "Print every intermediate term");
  add_budget(norm);

  auto* eq = app.add_subcommand("eq", "Beta-eta equality");
  eq->add_option("file1", file)->required();
  eq->add_option("file2", file2)->required();
  add_budget(eq);

  auto* poly = app.add_subcommand("poly", "Compile a polynomial to a safe term");
  poly->add_option("polynomial", text)->required();
  poly->add_option("--at", at, "Assignment, e.g. x=2,y=1");
  poly->add_flag("--emit-term", emit, "Print the compiled term");
  add_budget(poly);

  auto* word = app.add_subcommand("word", "Run a word function on a Church-encoded word");
  word->add_option("--alphabet", alphabet)->capture_default_str();
  word->add_option("--spec", spec, "Word function file")->required();
  word->add_option("--input", input, "Input word")->required();
  add_budget(word);

  auto* qbf = app.add_subcommand("qbf", "Reduce a QBF to a term equality and check it");
  qbf->add_option("formula", text);
  qbf->add_option("--random", random, "Generate N random formulas instead (uses --seed)");
  qbf->add_option("--emit-instance", emit_dir, "Write instance files and a manifest to DIR");
  add_budget(qbf);

  auto* trav = app.add_subcommand("traverse", "Computation tree and traversals");
  trav->add_option("file", file)->required();
  trav->add_option("--max-length", max_len)->capture_default_str();
  trav->add_flag("--show-views", views, "Print the P-view of each traversal");

  auto* corpus = app.add_subcommand("corpus", "Run every property suite over the built-in corpus");
  add_budget(corpus);
  corpus->add_option("--max-length", max_len, "Traversal length bound")->capture_default_str();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(g, file);
    if (*norm) return cmd_normalize(g, file, strategy, budget, trace);
    if (*eq) return cmd_eq(g, file, file2, budget);
    if (*poly) return cmd_poly(g, text, at, emit, budget);
    if (*word) return cmd_word(g, alphabet, spec, input, budget);
    if (*qbf) return cmd_qbf(g, text, random, emit_dir, budget);
    if (*trav) return cmd_traverse(g, file, max_len, views);
    if (*corpus) return cmd_corpus(g, budget, max_len);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

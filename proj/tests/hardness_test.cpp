#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "safelc/hardness.hpp"

namespace safelc {
namespace {

TEST(Qbf, ParseAndPrint) {
  QBF q = parse_qbf("forall x y. exists z. (x | y) & !z");
  ASSERT_EQ(q.prefix.size(), 3u);
  EXPECT_EQ(q.prefix[2].first, Quantifier::Exists);
  EXPECT_EQ(to_string(q), "forall x. forall y. exists z. (x | y) & !z");
  EXPECT_EQ(to_string(parse_qbf(to_string(q))), to_string(q));
  EXPECT_EQ(to_string(*parse_qbf("exists a. a | a & !a").matrix), "a | a & !a");
}

TEST(Qbf, ParseErrors) {
  EXPECT_THROW(parse_qbf("forall x. y"), ParseError);
  EXPECT_THROW(parse_qbf("forall x x. x"), ParseError);
  EXPECT_THROW(parse_qbf("forall x. (x"), ParseError);
  EXPECT_THROW(parse_qbf("x & x"), ParseError);
}

TEST(Oracle, Examples) {
  EXPECT_FALSE(eval_qbf(parse_qbf("forall x. x")));
  EXPECT_TRUE(eval_qbf(parse_qbf("exists x. x")));
  EXPECT_TRUE(eval_qbf(parse_qbf("forall x. exists y. (x & y) | (!x & !y)")));
  EXPECT_FALSE(eval_qbf(parse_qbf("exists y. forall x. (x & y) | (!x & !y)")));
  EXPECT_TRUE(eval_qbf(parse_qbf("forall x. exists y. (x | y) & (!x | !y)")));
}

bool normal_bool(const Term& t) {
  Term nf = normalize(t, Strategy::Plain);
  if (alpha_eq(nf, parse("\\t:o f:o. t"))) return true;
  if (alpha_eq(nf, parse("\\t:o f:o. f"))) return false;
  ADD_FAILURE() << "not a boolean: " << pretty(nf);
  return false;
}

TEST(Reduction, Examples) {
  EXPECT_TRUE(alpha_eq(normalize(qbf_to_term(parse_qbf("exists x. x")), Strategy::Plain), parse("\\t:o f:o. t")));
  EXPECT_TRUE(alpha_eq(normalize(qbf_to_term(parse_qbf("forall x. x")), Strategy::Plain), parse("\\t:o f:o. f")));

  auto [l1, r1] = equality_instance(parse_qbf("exists x. x"));
  EXPECT_TRUE(beta_eta_equal(l1, r1));
  auto [l2, r2] = equality_instance(parse_qbf("forall x. x"));
  EXPECT_FALSE(beta_eta_equal(l2, r2));
}

TEST(Reduction, InstancesAreClosedSafeBooleans) {
  for (const char* s : {"forall x. exists y. (x | y) & (!x | !y)", "exists x y z. x & !y & z", "forall x. !!x | !x"}) {
    QBF q = parse_qbf(s);
    Term t = qbf_to_term(q);
    EXPECT_EQ(simple_type_of(t).str(), "o -> o -> o") << s;
    EXPECT_EQ(safety_check(t).level, SafetyLevel::Safe) << s;
    EXPECT_LE(t.size(), size_bound(q)) << s;
    EXPECT_EQ(normal_bool(t), eval_qbf(q)) << s;
  }
}

TEST(Reduction, SafeStrategyAgrees) {
  QBF q = parse_qbf("forall x. exists y. forall z. (x | !y) & (y | z | !z)");
  EXPECT_TRUE(alpha_eq(normalize(qbf_to_term(q), Strategy::Safe), normalize(qbf_to_term(q), Strategy::Plain)));
}

TEST(Enumeration, Counts) {
  // n variables: depth-0 layer n, then each layer multiplies by
  // 1 + 2n (depth 1) or 1 + 4n (deeper); 2^n prefixes.
  std::size_t total = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t layer = n, sum = n;
    layer *= 1 + 2 * n, sum += layer;
    layer *= 1 + 4 * n, sum += layer;
    layer *= 1 + 4 * n, sum += layer;
    EXPECT_EQ(enumerate_matrices(qbf_variable_names(n), 3).size(), sum);
    total += sum << n;
  }
  EXPECT_EQ(total, 34604u);
  EXPECT_EQ(enumerate_qbfs(3, 3).size(), total);
}

TEST(Enumeration, SampleAgreesWithOracle) {
  auto all = enumerate_qbfs(3, 3);
  for (std::size_t i = 0; i < all.size(); i += 211) {
    auto [lhs, rhs] = equality_instance(all[i]);
    EXPECT_EQ(beta_eta_equal(lhs, rhs), eval_qbf(all[i])) << to_string(all[i]);
  }
}

TEST(Random, DeterministicGivenSeed) {
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(to_string(random_qbf(a)), to_string(random_qbf(b)));
}

TEST(Benchmark, EmitsFilesAndManifest) {
  auto dir = std::filesystem::temp_directory_path() / "safelc_bench_test";
  std::filesystem::remove_all(dir);
  std::mt19937_64 rng(11);
  std::vector<QBF> qbfs;
  for (int i = 0; i < 50; ++i) qbfs.push_back(random_qbf(rng, 3, 3));
  auto out = emit_benchmark(dir, qbfs, 11);
  ASSERT_EQ(out.size(), 50u);

  std::ifstream manifest(dir / "manifest.tsv");
  std::string line;
  std::getline(manifest, line);
  EXPECT_EQ(line, "# seed 11");
  std::getline(manifest, line);
  std::size_t rows = 0;
  while (std::getline(manifest, line)) ++rows;
  EXPECT_EQ(rows, 50u);

  for (const auto& b : out) {
    EXPECT_EQ(b.label, eval_qbf(b.formula));
    std::ifstream lhs(dir / b.lhs_file), rhs(dir / b.rhs_file);
    std::string comment, l, r;
    std::getline(lhs, comment);
    std::getline(lhs, l);
    std::getline(rhs, r);
    EXPECT_EQ(beta_eta_equal(parse(l), parse(r)), b.label) << b.id;
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace safelc

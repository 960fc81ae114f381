#include <gtest/gtest.h>

#include "safelc/corpus.hpp"
#include "safelc/reduction.hpp"
#include "safelc/typing.hpp"

namespace safelc {
namespace {

const Type o = Type::ground();
const Type o_o = Type::arrow(o, o);

SafetyLevel level_of(const std::string& src, bool raw = false) {
  Judgment j = parse_judgment(src, !raw);
  return safety_check(j.env, j.term).level;
}

TEST(SimpleType, Examples) {
  EXPECT_EQ(simple_type_of(parse("\\f:o->o.\\x:o. f x")), parse_type("(o->o)->o->o"));
  EXPECT_EQ(simple_type_of(parse("(\\x:o.x)")), o_o);
  EXPECT_EQ(simple_type_of({{"f", o_o}}, parse("f")), o_o);
}

TEST(SimpleType, Errors) {
  try {
    simple_type_of({{"f", o_o}}, parse("f f"));
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_NE(std::string(e.what()).find("argument type mismatch"), std::string::npos);
  }
  EXPECT_THROW(simple_type_of(parse("\\x:o. y")), TypeError);
  EXPECT_THROW(simple_type_of(parse("\\x:o. x x")), TypeError);
}

TEST(Safety, ClosedSingleBlockIsSafe) {
  SafetyVerdict v = safety_check(parse("\\f:o->o.\\x:o. f x"));
  EXPECT_EQ(v.level, SafetyLevel::Safe);
  ASSERT_TRUE(v.type.has_value());
  EXPECT_EQ(*v.type, parse_type("(o->o)->o->o"));
  EXPECT_EQ(v.failure(), nullptr);
}

TEST(Safety, GroupingMatters) {
  // The inner block \f. f x has an order-2 type and a free variable of order 0.
  SafetyVerdict raw = safety_check(parse_raw("\\x:o.(\\f:o->o. f x)"));
  EXPECT_EQ(raw.level, SafetyLevel::UnsafeTypable);
  const RuleApplication* fail = raw.failure();
  ASSERT_NE(fail, nullptr);
  EXPECT_EQ(fail->rule, "abs");
  EXPECT_EQ(fail->term_order, 2u);
  EXPECT_EQ(fail->violating_var, "x");
  EXPECT_EQ(fail->violating_order, 0u);
  EXPECT_EQ(fail->location, "/body");

  EXPECT_EQ(safety_check(parse("\\x:o.(\\f:o->o. f x)")).level, SafetyLevel::Safe);
}

TEST(Safety, KiersteadTerms) {
  EXPECT_EQ(level_of("\\f:(o->o)->o. f (\\x:o. f (\\y:o. y))"), SafetyLevel::Safe);
  SafetyVerdict v = safety_check(parse("\\f:(o->o)->o. f (\\x:o. f (\\y:o. x))"));
  EXPECT_EQ(v.level, SafetyLevel::UnsafeTypable);
  ASSERT_NE(v.failure(), nullptr);
  EXPECT_EQ(v.failure()->violating_var, "x");
  EXPECT_EQ(v.failure()->term_order, 1u);
}

TEST(Safety, AlmostSafeApplications) {
  SafetyVerdict v = safety_check({{"f", parse_type("o->o->o")}, {"x", o}}, parse("f x"));
  EXPECT_EQ(v.level, SafetyLevel::AlmostSafe);
  ASSERT_NE(v.failure(), nullptr);
  EXPECT_EQ(v.failure()->rule, "app");
  EXPECT_EQ(v.failure()->violating_var, "x");
  EXPECT_EQ(level_of("f:o->o->o |- \\x:o. f x"), SafetyLevel::UnsafeTypable);
}

TEST(Safety, IllTypedIsAVerdict) {
  SafetyVerdict v = safety_check({{"f", o_o}}, parse("f f"));
  EXPECT_EQ(v.level, SafetyLevel::IllTyped);
  EXPECT_FALSE(v.type.has_value());
  EXPECT_FALSE(v.error.empty());
}

TEST(Safety, HandCorpusLabels) {
  for (const CorpusEntry& e : hand_corpus()) {
    Judgment j = e.judgment();
    EXPECT_EQ(safety_check(j.env, j.term).level, e.expected) << e.name;
  }
}

TEST(Safety, SafeDerivationsRespectOrders) {
  TermGenerator gen(5);
  int safe = 0;
  for (int i = 0; i < 500; ++i) {
    Term t = gen.closed_term().term;
    SafetyVerdict v = safety_check(t);
    ASSERT_NE(v.level, SafetyLevel::IllTyped) << pretty(t);
    EXPECT_EQ(*v.type, simple_type_of(t));
    if (v.level != SafetyLevel::Safe) continue;
    ++safe;
    for (const RuleApplication& r : v.trace) {
      EXPECT_TRUE(r.ok);
      if (r.rule == "app_as") continue;
      for (const auto& [name, ord] : r.free_var_orders) EXPECT_GE(ord, r.term_order) << pretty(t) << " " << name;
    }
  }
  EXPECT_GT(safe, 100);
}

TEST(Safety, UngroupingCanOnlyLoseSafety) {
  TermGenerator gen(11);
  for (int i = 0; i < 300; ++i) {
    Term t = gen.closed_term().term;
    Term raw = gen.ungroup(t);
    if (safety_check(raw).level == SafetyLevel::Safe) {
      EXPECT_EQ(safety_check(t).level, SafetyLevel::Safe) << pretty(raw);
    }
  }
}

TEST(EtaLong, Examples) {
  EXPECT_TRUE(alpha_eq(eta_long({{"f", o_o}}, parse("f")), parse("\\x:o. f x")));
  Term already = parse("\\f:o->o.\\x:o. f x");
  EXPECT_TRUE(identical(eta_long(already), already));
  Term g = eta_long({{"g", parse_type("(o->o)->o")}}, parse("g"));
  EXPECT_TRUE(alpha_eq(g, parse("\\h:o->o. g (\\x:o. h x)")));
}

TEST(EtaLong, RedexesAreExpandedToo) {
  Term t = eta_long({{"f", o_o}}, parse("(\\g:o->o. g) f"));
  EXPECT_TRUE(alpha_eq(t, parse("\\x:o. (\\g:o->o y:o. g y) (\\z:o. f z) x")));
}

TEST(EtaLong, IdempotentAndBetaEtaEqual) {
  TermGenerator gen(3);
  for (int i = 0; i < 300; ++i) {
    Term t = gen.closed_term().term;
    Term e = eta_long(t);
    EXPECT_TRUE(identical(eta_long(e), e)) << pretty(t);
    EXPECT_EQ(simple_type_of(e), simple_type_of(t));
    EXPECT_TRUE(beta_eta_equal(t, e)) << pretty(t);
  }
}

TEST(Homogeneity, IsNotAPrecondition) {
  // o -> (o->o) -> o is not homogeneous, yet terms of that type can be safe.
  Term t = parse("\\x:o f:o->o. f x");
  EXPECT_FALSE(homogeneity_check(simple_type_of(t)));
  EXPECT_EQ(safety_check(t).level, SafetyLevel::Safe);
}

}  // namespace
}  // namespace safelc

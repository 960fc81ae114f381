#include <optional>

#include <gtest/gtest.h>

#include "safelc/corpus.hpp"
#include "safelc/encodings.hpp"
#include "safelc/reduction.hpp"

namespace safelc {
namespace {

const Type o = Type::ground();
const Type o_o = Type::arrow(o, o);

TEST(CaptureAvoiding, Examples) {
  Term r = subst_capture_avoiding(parse("\\y:o. x"), {{"x", Term::var("y")}});
  EXPECT_EQ(pretty(r), "\\y'1:o. y");
  EXPECT_TRUE(alpha_eq(r, parse("\\w:o. y")));

  Term id = parse("\\y:o. y");
  EXPECT_TRUE(identical(subst_capture_avoiding(id, {{"x", Term::var("z")}}), id));

  Term app = subst_capture_avoiding(parse("f x"), {{"x", parse("\\z:o.z")}});
  EXPECT_TRUE(identical(app, parse("f (\\z:o.z)")));
}

TEST(CaptureAvoiding, RenamesOnlyWhenNeeded) {
  // y is free in the image, but x does not occur under the binder.
  Term t = parse("\\y:o. g y");
  EXPECT_TRUE(identical(subst_capture_avoiding(t, {{"x", Term::var("y")}}), t));
  // Fresh names avoid every name in sight.
  Term r = subst_capture_avoiding(parse("\\y:o. f x y'1"), {{"x", Term::var("y")}});
  EXPECT_EQ(pretty(r), "\\y'2:o. f y y'1");
}

TEST(CaptureAvoiding, SimultaneousNotSequential) {
  Term r = subst_capture_avoiding(parse("f x y"), {{"x", Term::var("y")}, {"y", Term::var("x")}});
  EXPECT_TRUE(identical(r, parse("f y x")));
}

TEST(NoRename, Examples) {
  NoRenameResult r = subst_no_rename(parse("\\y:o. x"), {{"x", Term::var("y")}});
  EXPECT_TRUE(identical(r.term, parse("\\y:o. y")));
  EXPECT_TRUE(r.captured);

  Term t = parse("\\f:o->o x:o. f (g x)");
  NoRenameResult id = subst_no_rename(t, {});
  EXPECT_TRUE(identical(id.term, t));
  EXPECT_FALSE(id.captured);

  NoRenameResult shadowed = subst_no_rename(parse("\\x:o. x"), {{"x", Term::var("y")}});
  EXPECT_FALSE(shadowed.captured);
}

TEST(BetaStep, Examples) {
  auto s1 = beta_step(parse("(\\x:o.x) y"));
  ASSERT_TRUE(s1);
  EXPECT_TRUE(identical(*s1, parse("y")));

  auto s2 = beta_step(parse("(\\f:o->o.\\x:o. f x) g a"));
  ASSERT_TRUE(s2);
  EXPECT_TRUE(alpha_eq(*s2, parse("(\\x:o. g x) a")));

  EXPECT_FALSE(beta_step(parse("\\x:o.x")));
}

TEST(BetaStep, LeftmostOutermost) {
  auto s = beta_step(parse("f ((\\x:o. x) a) ((\\y:o. y) b)"));
  ASSERT_TRUE(s);
  EXPECT_TRUE(identical(*s, parse("f a ((\\y:o. y) b)")));
  auto inner = beta_step(parse("(\\x:o. (\\y:o. y) x) a"));
  ASSERT_TRUE(inner);
  EXPECT_TRUE(identical(*inner, parse("(\\y:o. y) a")));
}

TEST(SafeStep, Examples) {
  auto s1 = safe_step(parse("(\\f:o->o.\\x:o. f x) g a"));
  ASSERT_TRUE(s1);
  EXPECT_TRUE(identical(*s1, parse("g a")));

  auto s2 = safe_step(parse("(\\x:o.\\y:o. x) a"));
  ASSERT_TRUE(s2);
  EXPECT_TRUE(identical(*s2, parse("\\y:o. a")));

  EXPECT_FALSE(safe_step(parse("\\f:o->o x:o. f (f x)")));
}

TEST(SafeStep, ExtraArgumentsStayApplied) {
  auto s = safe_step(parse("(\\x:o. \\f:o->o. f) a g b"));
  ASSERT_TRUE(s);
  EXPECT_TRUE(identical(*s, parse("g b")));
}

TEST(SafeStep, CaptureIsAContractViolation) {
  // Almost safe, not safe: the partial block captures the free y.
  EXPECT_THROW(safe_step(parse("(\\x:o y:o. x) y")), ContractViolation);
}

TEST(SafeStep, DuplicateBindersInABlock) {
  auto s = safe_step(parse("(\\x:o x:o. x) a b"));
  ASSERT_TRUE(s);
  EXPECT_TRUE(identical(*s, parse("b")));
  auto p = beta_step(parse("(\\x:o x:o. x) a b"));
  ASSERT_TRUE(p);
  EXPECT_TRUE(identical(*beta_step(*p), parse("b")));
}

TEST(Normalize, Examples) {
  for (Strategy s : {Strategy::Plain, Strategy::Safe}) EXPECT_TRUE(identical(normalize(parse("(\\x:o.x) y"), s), parse("y")));
  // 2^2 via the order-3 numeral for 2.
  Term pow = parse("(\\F:(o->o)->o->o x:o->o. F (F x)) (\\s:o->o z:o. s (s z))");
  for (Strategy s : {Strategy::Plain, Strategy::Safe}) EXPECT_EQ(decode_nat(normalize(pow, s)), 4u);
}

TEST(Normalize, Budget) {
  Term pow = parse("(\\F:(o->o)->o->o x:o->o. F (F x)) (\\s:o->o z:o. s (s z))");
  try {
    normalize(pow, Strategy::Plain, {2, 1000});
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.steps, 2u);
  }
  EXPECT_THROW(normalize(pow, Strategy::Plain, {1000, 10}), BudgetExceeded);
}

TEST(Normalize, FastEngineMatchesIteratedSteps) {
  TermGenerator gen(21);
  for (int i = 0; i < 400; ++i) {
    Term t = gen.closed_term().term;
    for (Strategy s : {Strategy::Plain, Strategy::Safe}) {
      if (s == Strategy::Safe && safety_check(t).level != SafetyLevel::Safe) continue;
      // Some generated terms have huge normal forms; those are skipped.
      const ReductionBudget budget{5000, 20000};
      std::optional<NormalizeStats> fast;
      try {
        fast = normalize_with_stats(t, s, budget);
      } catch (const BudgetExceeded&) {
        continue;
      }
      std::size_t steps = 0;
      Term slow = reduction_sequence(t, s, budget, [&](const Term&, std::size_t i) { steps = i; });
      ASSERT_TRUE(identical(slow, fast->term)) << pretty(t);
      ASSERT_EQ(steps, fast->steps) << pretty(t);
    }
  }
}

TEST(BetaEtaEqual, Examples) {
  EXPECT_TRUE(beta_eta_equal(parse("\\x:o.x"), parse("\\y:o.y")));
  EXPECT_TRUE(beta_eta_equal({{"f", o_o}}, parse("f"), parse("\\x:o. f x")));
  EXPECT_FALSE(beta_eta_equal(church_nat(2), church_nat(3)));
  EXPECT_THROW(beta_eta_equal(church_nat(2), parse("\\x:o. x")), TypeError);
}

TEST(Properties, NoRenameAgreesWhenNoCapture) {
  TermGenerator gen(99);
  int agreed = 0, captured = 0;
  for (int i = 0; i < 500; ++i) {
    Term t = gen.closed_term().term;
    // Substitute into the body of the outermost block.
    if (!t.is_abs()) continue;
    const Binder& b = t.binders().front();
    // Free ground images can be captured; closed images never are.
    Term image = Term::var(i % 2 ? "y" : "z");
    if (!b.type.is_ground()) {
      try {
        image = gen.closed_term(b.type).term;
      } catch (const Error&) {
        image = Term::var("u");  // uninhabited type; no binder is named u
      }
    }
    Substitution s{{b.name, image}};
    NoRenameResult nr = subst_no_rename(t.body(), s);
    Term ca = subst_capture_avoiding(t.body(), s);
    if (!nr.captured) {
      EXPECT_TRUE(alpha_eq(nr.term, ca)) << pretty(t);
      ++agreed;
    } else {
      ++captured;
    }
  }
  EXPECT_GT(agreed, 100);
  EXPECT_GT(captured, 0);
}

}  // namespace
}  // namespace safelc

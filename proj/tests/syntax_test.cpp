#include <random>

#include <gtest/gtest.h>

#include "safelc/corpus.hpp"
#include "safelc/syntax.hpp"

namespace safelc {
namespace {

const Type o = Type::ground();
const Type o_o = Type::arrow(o, o);

TEST(Types, OrderAndPrinting) {
  EXPECT_EQ(order_of(parse_type("o")), 0u);
  EXPECT_EQ(order_of(parse_type("o->o->o")), 1u);
  EXPECT_EQ(order_of(parse_type("(o->o)->o")), 2u);
  EXPECT_EQ(parse_type("o -> (o -> o)"), parse_type("o->o->o"));
  EXPECT_EQ(parse_type("((o->o)->o)->o->o").str(), "((o -> o) -> o) -> o -> o");
  EXPECT_EQ(Type::arrow(o_o, o_o).arity(), 2u);
}

TEST(Types, Homogeneity) {
  EXPECT_TRUE(homogeneity_check(parse_type("(o->o)->o->o")));
  EXPECT_FALSE(homogeneity_check(parse_type("o->(o->o)->o")));
  EXPECT_TRUE(homogeneity_check(parse_type("o")));
  EXPECT_FALSE(homogeneity_check(parse_type("(o->(o->o)->o)->o")));
}

TEST(Parse, Identity) {
  Term t = parse("\\x:o. x");
  ASSERT_TRUE(t.is_abs());
  ASSERT_EQ(t.binders().size(), 1u);
  EXPECT_EQ(t.binders()[0], (Binder{"x", o}));
  EXPECT_TRUE(t.body().is_var());
  EXPECT_EQ(t.body().name(), "x");
}

TEST(Parse, ConsecutiveAbstractionsMerge) {
  Term t = parse("\\f:o->o. \\x:o. f x");
  ASSERT_TRUE(t.is_abs());
  ASSERT_EQ(t.binders().size(), 2u);
  EXPECT_EQ(t.binders()[0], (Binder{"f", o_o}));
  EXPECT_EQ(t.binders()[1], (Binder{"x", o}));
  ASSERT_TRUE(t.body().is_app());
  EXPECT_EQ(t.body().head().name(), "f");
  EXPECT_EQ(t.body().args().size(), 1u);
}

TEST(Parse, NestedApplication) {
  Term t = parse("(\\x:o. x) ((\\y:o. y) z)");
  ASSERT_TRUE(t.is_app());
  EXPECT_TRUE(t.head().is_abs());
  ASSERT_EQ(t.args().size(), 1u);
  const Term& arg = t.args()[0];
  ASSERT_TRUE(arg.is_app());
  EXPECT_TRUE(arg.head().is_abs());
  EXPECT_EQ(arg.args()[0].name(), "z");
}

TEST(Parse, RawKeepsParenthesisedBlocks) {
  Term raw = parse_raw("\\x:o.(\\f:o->o. f x)");
  ASSERT_TRUE(raw.is_abs());
  EXPECT_EQ(raw.binders().size(), 1u);
  EXPECT_TRUE(raw.body().is_abs());
  EXPECT_FALSE(is_canonical(raw));
  EXPECT_EQ(canonicalize(raw).binders().size(), 2u);

  Term app = parse_raw("(f x) y");
  EXPECT_TRUE(app.head().is_app());
  EXPECT_TRUE(parse("(f x) y").head().is_var());
}

TEST(Parse, Errors) {
  try {
    parse("\\x:o.\n  x )");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2u);
    EXPECT_EQ(e.column, 5u);
  }
  EXPECT_THROW(parse("\\x. x"), ParseError);
  EXPECT_THROW(parse("\\x:o->. x"), ParseError);
  EXPECT_THROW(parse("x $ y"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(Parse, UnicodeAndJudgments) {
  EXPECT_TRUE(alpha_eq(parse("λx:o. x"), parse("\\y:o. y")));
  Judgment j = parse_judgment("f:o->o, x:o |- f x");
  EXPECT_EQ(j.env.size(), 2u);
  EXPECT_EQ(j.env.at("f"), o_o);
  EXPECT_THROW(parse_judgment("x:o, x:o |- x"), ParseError);
  Judgment c = parse_judgment("# comment\n\\x:o. x");
  EXPECT_TRUE(c.env.empty());
}

TEST(Pretty, Examples) {
  EXPECT_EQ(pretty(Term::abs({{"x", o}}, Term::var("x"))), "\\x:o. x");
  EXPECT_EQ(pretty(Term::app(Term::var("f"), {Term::var("x"), Term::var("y")})), "f x y");
  EXPECT_EQ(pretty(parse("f (g x) (\\y:o. y)")), "f (g x) (\\y:o. y)");
  EXPECT_EQ(pretty(parse_raw("\\x:o.(\\f:o->o. f x)")), "\\x:o. (\\f:o -> o. f x)");
}

TEST(Canonicalize, Examples) {
  Term body = Term::app(Term::var("f"), {Term::var("x")});
  Term nested = Term::abs({{"f", o_o}}, Term::abs({{"x", o}}, body));
  Term merged = canonicalize(nested);
  EXPECT_TRUE(identical(merged, Term::abs({{"f", o_o}, {"x", o}}, body)));

  Term app = Term::app(Term::app(Term::var("f"), {Term::var("x")}), {Term::var("y")});
  EXPECT_TRUE(identical(canonicalize(app), Term::app(Term::var("f"), {Term::var("x"), Term::var("y")})));

  Term already = parse("\\f:o->o x:o. f x");
  EXPECT_TRUE(canonicalize(already).same_node(already));
}

TEST(FreeVars, Examples) {
  EXPECT_TRUE(free_vars(parse("\\x:o. x")).empty());
  auto fv = free_vars(parse("\\x:o. f x"), {{"f", o_o}});
  ASSERT_EQ(fv.size(), 1u);
  EXPECT_EQ(fv.at("f"), o_o);
  auto fv2 = free_vars(parse("(\\x:o. x) y"), {{"y", o}});
  ASSERT_EQ(fv2.size(), 1u);
  EXPECT_EQ(fv2.at("y"), o);
  EXPECT_THROW(free_vars(parse("g x"), {{"x", o}}), TypeError);
}

TEST(AlphaEq, Examples) {
  EXPECT_TRUE(alpha_eq(parse("\\x:o.x"), parse("\\y:o.y")));
  EXPECT_TRUE(alpha_eq(parse("\\x:o.\\f:o->o. f x"), parse("\\y:o.\\g:o->o. g y")));
  EXPECT_FALSE(alpha_eq(parse("\\x:o.x"), parse("\\x:o.\\y:o.x")));
  EXPECT_FALSE(alpha_eq(parse("\\x:o y:o. x"), parse("\\x:o y:o. y")));
  EXPECT_FALSE(alpha_eq(parse("\\x:o. x"), parse("\\x:o->o. x")));
  EXPECT_FALSE(alpha_eq(parse("\\x:o. y"), parse("\\x:o. z")));
  // Shadowing inside one block: the later binder wins.
  EXPECT_TRUE(alpha_eq(parse("\\x:o x:o. x"), parse("\\a:o b:o. b")));
}

TEST(Json, FieldNames) {
  auto j = to_json(parse("\\f:o->o x:o. f x"));
  EXPECT_EQ(j["kind"], "abs");
  EXPECT_EQ(j["binders"][0]["name"], "f");
  EXPECT_EQ(j["binders"][0]["type"], "o -> o");
  EXPECT_EQ(j["body"]["kind"], "app");
  EXPECT_EQ(j["body"]["head"]["name"], "f");
  EXPECT_EQ(j["body"]["args"][0]["kind"], "var");
}

// Round trip and idempotence over generated terms.
TEST(Properties, RoundTripOnGeneratedTerms) {
  TermGenerator gen(20240611);
  for (int i = 0; i < 1000; ++i) {
    GeneratedTerm g = gen.closed_term();
    std::string text = pretty(g.term);
    Term back = parse(text);
    ASSERT_TRUE(alpha_eq(back, g.term)) << text;
    ASSERT_TRUE(identical(back, g.term)) << text;
    ASSERT_TRUE(identical(canonicalize(g.term), g.term));
    ASSERT_EQ(free_names(canonicalize(g.term)), free_names(g.term));
  }
}

TEST(Properties, RawRoundTripAndCanonicalization) {
  TermGenerator gen(77);
  for (int i = 0; i < 300; ++i) {
    Term raw = gen.ungroup(gen.closed_term().term);
    ASSERT_TRUE(identical(parse_raw(pretty(raw)), raw)) << pretty(raw);
    Term c = canonicalize(raw);
    ASSERT_TRUE(is_canonical(c));
    ASSERT_TRUE(identical(canonicalize(c), c));
    ASSERT_EQ(free_names(c), free_names(raw));
  }
}

}  // namespace
}  // namespace safelc

#include <gtest/gtest.h>

#include "safelc/encodings.hpp"

namespace safelc {
namespace {

TEST(Numerals, Examples) {
  EXPECT_TRUE(alpha_eq(church_nat(0), parse("\\s:o->o z:o. z")));
  EXPECT_EQ(decode_nat(church_nat(0)), 0u);
  EXPECT_EQ(decode_nat(church_nat(3)), 3u);
  for (std::uint64_t n = 0; n <= 20; ++n) EXPECT_EQ(safety_check(church_nat(n)).level, SafetyLevel::Safe) << n;
}

TEST(Numerals, DecodeAcceptsEtaShortAndRejectsJunk) {
  EXPECT_EQ(decode_nat(parse("\\s:o->o. s")), 1u);
  EXPECT_THROW(decode_nat(parse("\\x:o. x")), DecodeError);
  EXPECT_THROW(decode_nat(parse("\\s:o->o z:o. y")), DecodeError);
  // Right type, but the binders play the wrong roles.
  EXPECT_THROW(decode_nat(parse("\\s:o->o z:o. s (s z)").body()), DecodeError);
}

TEST(Numerals, AddAndMul) {
  for (std::uint64_t a = 0; a <= 4; ++a)
    for (std::uint64_t b = 0; b <= 4; ++b) {
      EXPECT_EQ(decode_nat(normalize(make_app(church_add(), {church_nat(a), church_nat(b)}), Strategy::Safe)), a + b);
      EXPECT_EQ(decode_nat(normalize(make_app(church_mul(), {church_nat(a), church_nat(b)}), Strategy::Safe)), a * b);
    }
  EXPECT_EQ(safety_check(church_add()).level, SafetyLevel::Safe);
  EXPECT_EQ(safety_check(church_mul()).level, SafetyLevel::Safe);
}

TEST(Polynomial, ParseAndPrint) {
  Polynomial p = parse_polynomial("x^2*y + 3*x + 2");
  EXPECT_EQ(p.variables, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(p.degree(), 3u);
  EXPECT_EQ(p.str(), "x^2*y + 3*x + 2");
  EXPECT_EQ(parse_polynomial("0").str(), "0");
  EXPECT_EQ(parse_polynomial("x + x").str(), "2*x");
  EXPECT_THROW(parse_polynomial("x +"), ParseError);
  EXPECT_THROW(parse_polynomial("x - 1"), ParseError);
}

TEST(Polynomial, Examples) {
  Polynomial zero = parse_polynomial("0");
  EXPECT_TRUE(alpha_eq(normalize(compile_polynomial(zero), Strategy::Safe), church_nat(0)));

  Polynomial xy = parse_polynomial("x*y");
  EXPECT_EQ(run_polynomial(compile_polynomial(xy), {2, 3}, Strategy::Safe), 6u);

  Polynomial p = parse_polynomial("x^2*y + 3*x + 2");
  EXPECT_EQ(run_polynomial(compile_polynomial(p), {2, 1}, Strategy::Safe), 12u);
}

TEST(Polynomial, CompiledTermsAreSafeAndAgreeWithArithmetic) {
  // p(x, y) = 2x^3 + xy + 5, evaluated by hand.
  Polynomial p = parse_polynomial("2*x^3 + x*y + 5");
  Term t = compile_polynomial(p);
  EXPECT_EQ(safety_check(t).level, SafetyLevel::Safe);
  EXPECT_EQ(simple_type_of(t).str(), "((o -> o) -> o -> o) -> ((o -> o) -> o -> o) -> (o -> o) -> o -> o");
  for (std::uint64_t x = 0; x <= 3; ++x)
    for (std::uint64_t y = 0; y <= 3; ++y) {
      std::uint64_t expected = 2 * x * x * x + x * y + 5;
      EXPECT_EQ(run_polynomial(t, {x, y}, Strategy::Safe), expected);
      EXPECT_EQ(run_polynomial(t, {x, y}, Strategy::Plain), expected);
    }
}

TEST(Conditional, CandidatesAreRealConditionalsButNotSafe) {
  auto cands = conditional_candidates();
  ASSERT_GE(cands.size(), 3u);
  for (const auto& c : cands) {
    EXPECT_EQ(c.verdict.level, SafetyLevel::UnsafeTypable) << c.name;
    for (std::uint64_t n = 0; n <= 3; ++n) {
      Term r = normalize(make_app(c.term, {church_nat(n), church_nat(4), church_nat(1)}), Strategy::Plain);
      EXPECT_EQ(decode_nat(r), n == 0 ? 4u : 1u) << c.name << " " << n;
    }
  }
}

TEST(Words, Examples) {
  EXPECT_TRUE(alpha_eq(church_word(Word("ab", "")), parse("\\a:o->o b:o->o z:o. z")));
  EXPECT_TRUE(alpha_eq(church_word(Word("ab", "ab")), parse("\\a:o->o b:o->o z:o. a (b z)")));
  EXPECT_EQ(decode_word(church_word(Word("ab", "ab")), "ab").letters, "ab");
  EXPECT_THROW(Word("ab", "abc"), Error);
  EXPECT_THROW(Word("aa", ""), Error);
}

TEST(Words, AwkwardAlphabetGetsFreshBinders) {
  Word w("zo", "ozz");
  Term t = church_word(w);
  EXPECT_EQ(t.binders()[0].name, "l0");
  EXPECT_EQ(decode_word(t, "zo"), w);
}

TEST(Words, ShortWordsAreSafe) {
  std::vector<std::string> words{""};
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i].size() < 6)
      for (char c : {'a', 'b'}) words.push_back(words[i] + c);
  ASSERT_EQ(words.size(), 127u);
  for (const std::string& w : words) EXPECT_EQ(safety_check(church_word(Word("ab", w))).level, SafetyLevel::Safe) << w;
}

TEST(WordFunctions, ParseAndPrint) {
  WordFunction f = parse_word_function("hom({a -> \"bb\", b -> \"a\"}, concat(input, \"ab\"))  # comment");
  EXPECT_EQ(f.kind, WordFunction::Kind::Hom);
  EXPECT_EQ(parse_word_function(f.str()).str(), f.str());
  EXPECT_THROW(parse_word_function("concat(input)"), ParseError);
  EXPECT_THROW(parse_word_function("frobnicate(input)"), ParseError);
}

// Direct string versions of the functions under test.
std::string swap_ab(const std::string& w) {
  std::string out;
  for (char c : w) out += c == 'a' ? 'b' : 'a';
  return out;
}

std::string hom_bb_a(const std::string& w) {
  std::string out;
  for (char c : w) out += c == 'a' ? "bb" : "a";
  return out;
}

TEST(WordFunctions, Examples) {
  const std::vector<std::string> inputs{"", "a", "b", "ab", "ba", "aab", "bbb", "abab", "baaab", "abbaba"};
  Term empty = compile_word_function(WordFunction::constant(""), "ab");
  EXPECT_EQ(safety_check(empty).level, SafetyLevel::Safe);
  Term append = compile_word_function(parse_word_function("concat(input, \"ab\")"), "ab");
  Term hom = compile_word_function(parse_word_function("hom({a -> \"bb\", b -> \"a\"}, input)"), "ab");
  Term sq_swap = compile_word_function(parse_word_function("compose(concat(input, input), hom({a->\"b\", b->\"a\"}, input))"), "ab");
  for (const std::string& w : inputs) {
    EXPECT_EQ(run_word_function(empty, Word("ab", w), Strategy::Safe).letters, "");
    EXPECT_EQ(run_word_function(append, Word("ab", w), Strategy::Safe).letters, w + "ab");
    EXPECT_EQ(run_word_function(hom, Word("ab", w), Strategy::Safe).letters, hom_bb_a(w));
    EXPECT_EQ(run_word_function(sq_swap, Word("ab", w), Strategy::Safe).letters, swap_ab(w) + swap_ab(w));
  }
}

TEST(WordFunctions, EvaluatorMatchesDirectStrings) {
  for (const std::string w : {"", "ab", "bba"}) {
    EXPECT_EQ(evaluate_word_function(parse_word_function("reverse(input)"), w), std::string(w.rbegin(), w.rend()));
    EXPECT_EQ(evaluate_word_function(parse_word_function("ifempty(input, \"a\", \"b\")"), w), w.empty() ? "a" : "b");
    EXPECT_EQ(evaluate_word_function(parse_word_function("concat(input, input)"), w), w + w);
  }
}

TEST(WordFunctions, OutsideTheClassIsRejected) {
  EXPECT_THROW(compile_word_function(parse_word_function("reverse(input)"), "ab"), UnrepresentableError);
  EXPECT_THROW(compile_word_function(parse_word_function("ifempty(input, \"a\", \"b\")"), "ab"), UnrepresentableError);
}

TEST(WordFunctions, CatalogueIsSafe) {
  for (const auto& [name, f] : word_function_catalogue())
    EXPECT_EQ(safety_check(compile_word_function(f, "ab")).level, SafetyLevel::Safe) << name;
}

}  // namespace
}  // namespace safelc

#include <gtest/gtest.h>

#include <filesystem>

#include "mproj/parser.hpp"
#include "support.hpp"

using namespace mproj;
using mproj::testing::random_term;
using mproj::testing::sym;

namespace {

ParseError::Kind error_kind(const std::string& text) {
  try {
    parse_trs(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseError::Kind::Syntax;
}

}  // namespace

TEST(Parser, MinimalSystem) {
  const TRS trs = parse_trs("(VAR x)(RULES f(x) -> x)");
  ASSERT_EQ(trs.rules.size(), 1u);
  EXPECT_EQ(trs.signature, std::set<Symbol>{sym("f", 1)});
  EXPECT_EQ(trs.rules[0].to_string(), "f(x) -> x");
}

TEST(Parser, ArityInferenceAndEmptyParens) {
  const TRS trs = parse_trs("(VAR x y)(RULES minus(x,0()) -> x  minus(s(x),s(y)) -> minus(x,y))");
  ASSERT_EQ(trs.rules.size(), 2u);
  EXPECT_EQ(trs.signature, (std::set<Symbol>{sym("minus", 2), sym("s", 1), sym("0", 0)}));
  EXPECT_EQ(trs.rules[0].to_string(), "minus(x,0) -> x");
  EXPECT_EQ(trs.variables, (std::set<std::string>{"x", "y"}));
}

TEST(Parser, CommentsAreIgnored) {
  const TRS trs = parse_trs("(COMMENT a (nested) remark -> here)\n(VAR x)\n(RULES g(x) -> x)\n(COMMENT end)");
  EXPECT_EQ(trs.rules.size(), 1u);
}

TEST(Parser, ReportsDistinctErrors) {
  EXPECT_EQ(error_kind("(VAR x)(RULES x -> f(x))"), ParseError::Kind::VariableLhs);
  EXPECT_EQ(error_kind("(VAR x y)(RULES f(x) -> y)"), ParseError::Kind::FreeRhsVariable);
  EXPECT_EQ(error_kind("(VAR x)(RULES f(x) -> f(x,x))"), ParseError::Kind::Arity);
  EXPECT_EQ(error_kind("(VAR x)(RULES f(x) -> )"), ParseError::Kind::Syntax);
  EXPECT_EQ(error_kind("(VAR x)(RULES f(x -> x)"), ParseError::Kind::Syntax);
  EXPECT_EQ(error_kind("(VAR x)(RULES f(x) ->= x)"), ParseError::Kind::Unsupported);
  EXPECT_EQ(error_kind("(VAR x)(THEORY (AC f))(RULES f(x) -> x)"), ParseError::Kind::Unsupported);
  EXPECT_EQ(error_kind("(VAR x)(STRATEGY INNERMOST)(RULES f(x) -> x)"), ParseError::Kind::Unsupported);
}

TEST(Parser, ErrorPosition) {
  try {
    parse_trs("(VAR x)\n(RULES\n  f(x) -> g(x,\n)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
    EXPECT_GE(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(Parser, ParseTermWithMarks) {
  const Term t = parse_term("QUOT#(s(x),0)", {"x"});
  EXPECT_EQ(t.symbol(), sym("QUOT", 2, true));
  EXPECT_EQ(t.to_string(), "QUOT#(s(x),0)");
  EXPECT_THROW(parse_term("f(x", {"x"}), ParseError);
}

TEST(Parser, CorpusFilesParse) {
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(MPROJ_CORPUS_DIR)) {
    if (e.path().extension() != ".trs") continue;
    ++files;
    EXPECT_NO_THROW(parse_trs(mproj::testing::read_text(e.path().string()))) << e.path();
  }
  EXPECT_GE(files, 12u);
}

TEST(ParserProperty, PrintThenParseIsIdentity) {
  std::mt19937 rng(21);
  for (int k = 0; k < 300; ++k) {
    TRS trs;
    for (int r = 0; r < 3; ++r) {
      Term lhs = random_term(rng, 3);
      if (lhs.is_var()) lhs = Term::app(sym("g", 1), {lhs});
      // rhs over the lhs variables only
      Term rhs = lhs.args().empty() ? lhs : lhs.args()[0];
      if (rng() % 2) rhs = Term::app(sym("h", 2), {rhs, lhs});
      trs.rules.push_back({lhs, rhs});
      collect_symbols(lhs, trs.signature);
      collect_symbols(rhs, trs.signature);
      for (const auto& v : variables(lhs)) trs.variables.insert(v);
    }
    const std::string printed = to_tpdb(trs);
    const TRS back = parse_trs(printed);
    EXPECT_EQ(back.rules, trs.rules) << printed;
    EXPECT_EQ(back.signature, trs.signature);
    EXPECT_EQ(to_tpdb(back), printed);
  }
}

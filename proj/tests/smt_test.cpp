#include <gtest/gtest.h>

#include <thread>

#include "mproj/smt.hpp"
#include "mproj/subprocess.hpp"
#include "support.hpp"

using namespace mproj;
using mproj::testing::sym;

namespace {

const Symbol f = sym("f", 1);

std::string assert_line(const SmtScript& s) {
  const auto at = s.text.find("(assert ");
  return s.text.substr(at, s.text.find('\n', at) - at);
}

// Atoms of an SMT-LIB script that look like declared names.
std::set<std::string> declared_names(const std::string& text) {
  std::set<std::string> out;
  std::size_t at = 0;
  while ((at = text.find("(declare-fun ", at)) != std::string::npos) {
    at += 13;
    out.insert(text.substr(at, text.find(' ', at) - at));
  }
  return out;
}

}  // namespace

TEST(SmtLib, Examples) {
  const SmtScript san = to_smtlib(fm::implies(fm::pos(f, 1), fm::gt(fm::wt(f, 1), fm::lit(0))));
  EXPECT_EQ(assert_line(san), "(assert (=> p_f_1 (> w_f_1 0)))");
  EXPECT_EQ(san.text,
            "(set-logic QF_LIA)\n"
            "(declare-fun p_f_1 () Bool)\n"
            "(declare-fun w_f_1 () Int)\n"
            "(assert (=> p_f_1 (> w_f_1 0)))\n"
            "(check-sat)\n"
            "(get-model)\n");

  const SmtScript ite = to_smtlib(fm::ge(fm::ite(fm::neg(fm::pos(f, 1)), fm::lit(1), fm::lit(0)), fm::lit(1)));
  EXPECT_EQ(assert_line(ite), "(assert (>= (ite (not p_f_1) 1 0) 1))");

  EXPECT_EQ(assert_line(to_smtlib(fm::top())), "(assert true)");
  EXPECT_EQ(assert_line(to_smtlib(fm::ge(fm::wt(f, 1), fm::lit(-2)))), "(assert (>= w_f_1 (- 2)))");
}

TEST(SmtLib, NonlinearScriptsUseNia) {
  const Symbol g = sym("g", 1);
  const SmtScript s = to_smtlib(fm::ge(fm::prod({fm::wt(f, 1), fm::wt(g, 1)}), fm::lit(1)));
  EXPECT_EQ(s.text.rfind("(set-logic QF_NIA)", 0), 0u);
}

TEST(SmtLib, NameMangling) {
  EXPECT_EQ(NameTable::base_name({VarKind::Pos, sym("quot", 2, true), 1}), "p_quot_x23_1");
  EXPECT_EQ(NameTable::base_name({VarKind::Wt, sym("a-b", 1), 1}), "w_a_x2db_1");

  // '_' is escaped too, so a symbol cannot imitate the escape of another
  NameTable names;
  const VarRef marked{VarKind::Pos, sym("f", 1, true), 1};
  const VarRef lookalike{VarKind::Pos, sym("f_x23", 1), 1};
  EXPECT_EQ(names.intern(marked), "p_f_x23_1");
  EXPECT_EQ(names.intern(lookalike), "p_f_x5fx23_1");
  EXPECT_EQ(names.intern(marked), "p_f_x23_1");
  EXPECT_EQ(names.lookup("p_f_x23_1"), marked);
  EXPECT_EQ(names.lookup("p_f_x5fx23_1"), lookalike);
  EXPECT_FALSE(names.lookup("p_g_1").has_value());
}

TEST(SmtLib, DeclaresExactlyTheFormulaVariables) {
  const Symbol h = sym("h", 2);
  const Formula phi = fm::all({fm::implies(fm::pos(h, 1), fm::gt(fm::wt(h, 1), fm::lit(0))),
                               fm::any({fm::pos(h, 2), fm::pos(f, 1)}), fm::ge(fm::wt(f, 1), fm::lit(0))});
  const SmtScript s = to_smtlib(phi);
  std::set<std::string> expected;
  for (const auto& v : variables(phi)) expected.insert(s.names.names().at(v));
  EXPECT_EQ(declared_names(s.text), expected);
  EXPECT_EQ(expected.size(), 5u);
}

TEST(ParseModel, Examples) {
  NameTable names;
  names.intern({VarKind::Pos, f, 1});
  names.intern({VarKind::Wt, f, 1});
  Model m = parse_model("(define-fun p_f_1 () Bool true)", names);
  EXPECT_TRUE(m.pos(f, 1));
  EXPECT_EQ(m.wt(f, 1), 0);

  m = parse_model("(define-fun w_f_1 () Int 2)", names);
  EXPECT_EQ(m.wt(f, 1), 2);
  EXPECT_FALSE(m.pos(f, 1));

  m = parse_model("((define-fun w_f_1 () Int (- 1)))", names);
  EXPECT_EQ(m.wt(f, 1), -1);

  m = parse_model("(model\n  (define-fun p_f_1 () Bool false)\n  (define-fun w_f_1 () Int 7)\n  "
                  "(define-fun other () Int 3))",
                  names);
  EXPECT_FALSE(m.pos(f, 1));
  EXPECT_EQ(m.wt(f, 1), 7);
}

TEST(ParseModel, MalformedInputReportsOffset) {
  NameTable names;
  names.intern({VarKind::Pos, f, 1});
  try {
    parse_model("((define-fun p_f_1 () Bool true)", names);
    FAIL();
  } catch (const SExprError& e) {
    EXPECT_EQ(e.offset(), 0u);
  }
  try {
    parse_model("(define-fun p_f_1 () Bool true))", names);
    FAIL();
  } catch (const SExprError& e) {
    EXPECT_EQ(e.offset(), 31u);
  }
}

TEST(Subprocess, RunsAndCollectsOutput) {
  const ProcessResult r = run_process({"cat"}, "hello", SolveContext{});
  ASSERT_TRUE(r.spawned);
  EXPECT_EQ(r.exit_status, 0);
  EXPECT_EQ(r.out, "hello");
}

TEST(Subprocess, SpawnFailure) {
  const ProcessResult r = run_process({"mproj-no-such-binary-xyz"}, "", SolveContext{});
  EXPECT_FALSE(r.spawned);
  EXPECT_NE(r.spawn_error.find("spawn failure"), std::string::npos);
}

TEST(Subprocess, KillsOnDeadline) {
  SolveContext ctx;
  ctx.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(200);
  const auto start = std::chrono::steady_clock::now();
  const ProcessResult r = run_process({"sleep", "10"}, "", ctx);
  EXPECT_TRUE(r.timed_out);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
}

TEST(Subprocess, KillsOnCancellation) {
  std::stop_source stop;
  SolveContext ctx;
  ctx.stop = stop.get_token();
  std::jthread canceller([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    stop.request_stop();
  });
  const ProcessResult r = run_process({"sleep", "10"}, "", ctx);
  EXPECT_TRUE(r.timed_out);
}

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "mproj/dp.hpp"
#include "mproj/encoding.hpp"
#include "mproj/smt.hpp"
#include "support.hpp"

using namespace mproj;
using mproj::testing::read_text;
using mproj::testing::rule;
using mproj::testing::sym;

namespace fs = std::filesystem;

namespace {

using Status = SolveResult::Status;

const Symbol f = sym("f", 1);
const Symbol h = sym("h", 2);

bool on_path(const std::string& exe) {
  const char* path = std::getenv("PATH");
  if (!path) return false;
  std::string p = path;
  for (std::size_t start = 0; start <= p.size();) {
    const auto end = std::min(p.find(':', start), p.size());
    const fs::path candidate = fs::path(p.substr(start, end - start)) / exe;
    if (::access(candidate.c_str(), X_OK) == 0) return true;
    start = end + 1;
  }
  return false;
}

ExternalSolverConfig z3() { return {"z3 -in", std::chrono::milliseconds(20000)}; }

// A stand-in solver: a shell script that prints a canned reply.
class FakeSolver {
 public:
  explicit FakeSolver(const std::string& reply) {
    path_ = fs::temp_directory_path() / ("mproj-fake-" + std::to_string(::getpid()) + "-" +
                                         std::to_string(counter_++) + ".sh");
    std::ofstream out(path_);
    out << "cat > /dev/null\nprintf '%s' '" << reply << "'\n";
  }
  ~FakeSolver() { fs::remove(path_); }
  ExternalSolverConfig config() const { return {"sh " + path_.string(), std::chrono::milliseconds(5000)}; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

}  // namespace

TEST(InternalSolver, SanOnlyFormulaIsSat) {
  const SolveResult r = solve_internal(encode_san(h), {});
  EXPECT_EQ(r.status, Status::Sat);
  EXPECT_TRUE(evaluate(encode_san(h), r.model));
}

TEST(InternalSolver, ContradictionIsUnsat) {
  const Formula p = fm::any({fm::pos(h, 1), fm::pos(h, 2)});
  EXPECT_EQ(solve_internal(fm::all({p, fm::neg(p)}), {}).status, Status::Unsat);
  EXPECT_EQ(solve_internal(fm::all({fm::pos(f, 1), fm::neg(fm::pos(f, 1))}), {}).status, Status::Unsat);
}

TEST(InternalSolver, FirstModelInEnumerationOrder) {
  // false before true: p_h_1 is tried off first
  SolveResult r = solve_internal(fm::any({fm::pos(h, 1), fm::pos(h, 2)}), {});
  ASSERT_EQ(r.status, Status::Sat);
  EXPECT_FALSE(r.model.pos(h, 1));
  EXPECT_TRUE(r.model.pos(h, 2));

  // inactive positions read weight 1
  r = solve_internal(fm::all({encode_san(h), fm::pos(h, 2)}), {});
  ASSERT_EQ(r.status, Status::Sat);
  EXPECT_FALSE(r.model.pos(h, 1));
  EXPECT_EQ(r.model.wt(h, 1), 1);
  EXPECT_EQ(r.model.wt(h, 2), 1);

  // ascending weights
  r = solve_internal(fm::all({fm::pos(f, 1), fm::ge(fm::wt(f, 1), fm::lit(2))}), {});
  ASSERT_EQ(r.status, Status::Sat);
  EXPECT_EQ(r.model.wt(f, 1), 2);
}

TEST(InternalSolver, WeightBoundLimitsSearch) {
  const Formula phi = fm::all({fm::pos(f, 1), fm::ge(fm::wt(f, 1), fm::lit(3))});
  EXPECT_EQ(solve_internal(phi, {2, 8}).status, Status::Unsat);
  EXPECT_EQ(solve_internal(phi, {3, 8}).status, Status::Sat);
  // multiplicity bound caps |π(h)| = Wt(h,1) + Wt(h,2)
  const Formula both = fm::all({fm::pos(h, 1), fm::pos(h, 2), fm::ge(fm::wt(h, 1), fm::lit(2)),
                                fm::ge(fm::wt(h, 2), fm::lit(2))});
  EXPECT_EQ(solve_internal(both, {2, 3}).status, Status::Unsat);
  EXPECT_EQ(solve_internal(both, {2, 4}).status, Status::Sat);
}

TEST(InternalSolver, Deterministic) {
  const TRS trs = parse_trs(read_text(std::string(MPROJ_CORPUS_DIR) + "/quot_minus.trs"));
  const DPProblem dp = dependency_pairs(trs);
  const Formula phi = encode_problem(dp.pairs, dp.rules, ProjectionMode::Multi);
  const SolveResult a = solve_internal(phi, {}), b = solve_internal(phi, {});
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.model.values, b.model.values);
}

TEST(InternalSolver, GuardRefusesLargeFormulas) {
  std::vector<Formula> parts;
  for (int k = 0; k < 11; ++k) parts.push_back(fm::any({fm::pos(sym("g" + std::to_string(k), 2), 1),
                                                        fm::pos(sym("g" + std::to_string(k), 2), 2)}));
  const SolveResult r = solve_internal(fm::all(parts), {});
  EXPECT_EQ(r.status, Status::Unknown);
  EXPECT_NE(r.diagnostic.find("too large"), std::string::npos);
}

TEST(InternalSolver, HonoursCancellation) {
  std::stop_source stop;
  stop.request_stop();
  SolveContext ctx;
  ctx.stop = stop.get_token();
  EXPECT_EQ(solve_internal(encode_san(h), {}, ctx).status, Status::TimedOut);
}

TEST(SolverHandle, Validation) {
  EXPECT_THROW(validate(InternalSolverConfig{0, 8}), std::invalid_argument);
  EXPECT_THROW(validate(InternalSolverConfig{2, 0}), std::invalid_argument);
  EXPECT_THROW(validate(ExternalSolverConfig{"z3 -in", std::chrono::milliseconds(0)}), std::invalid_argument);
  EXPECT_THROW(validate(ExternalSolverConfig{"  ", std::chrono::milliseconds(10)}), std::invalid_argument);
  EXPECT_NO_THROW(validate(InternalSolverConfig{}));
  EXPECT_NE(make_solver(InternalSolverConfig{})->describe().find("internal"), std::string::npos);
}

TEST(ExternalSolver, MissingBinary) {
  const SolveResult r = solve_external(fm::pos(f, 1), {"mproj-no-such-solver -in", std::chrono::milliseconds(1000)});
  EXPECT_EQ(r.status, Status::Unknown);
  EXPECT_NE(r.diagnostic.find("spawn failure"), std::string::npos);
}

TEST(ExternalSolver, ParsesCannedReplies) {
  {
    FakeSolver s("sat\n(\n  (define-fun p_f_1 () Bool true)\n  (define-fun w_f_1 () Int 2)\n)\n");
    const SolveResult r = solve_external(fm::all({fm::pos(f, 1), fm::gt(fm::wt(f, 1), fm::lit(0))}), s.config());
    ASSERT_EQ(r.status, Status::Sat) << r.diagnostic;
    EXPECT_TRUE(r.model.pos(f, 1));
    EXPECT_EQ(r.model.wt(f, 1), 2);
  }
  {
    FakeSolver s("unsat\n(error \"model is not available\")\n");
    EXPECT_EQ(solve_external(fm::pos(f, 1), s.config()).status, Status::Unsat);
  }
  {
    FakeSolver s("unknown\n");
    EXPECT_EQ(solve_external(fm::pos(f, 1), s.config()).status, Status::Unknown);
  }
  {
    FakeSolver s("segfault\n");
    const SolveResult r = solve_external(fm::pos(f, 1), s.config());
    EXPECT_EQ(r.status, Status::Unknown);
    EXPECT_NE(r.diagnostic.find("segfault"), std::string::npos);
  }
  {
    FakeSolver s("sat\n((define-fun p_f_1 () Bool true)\n");
    const SolveResult r = solve_external(fm::pos(f, 1), s.config());
    EXPECT_EQ(r.status, Status::Unknown);
    EXPECT_NE(r.diagnostic.find("unparseable model"), std::string::npos);
  }
}

TEST(ExternalSolver, FileTemplate) {
  // {file} is replaced by the path of the written script
  const fs::path script = fs::temp_directory_path() / ("mproj-file-" + std::to_string(::getpid()) + ".sh");
  {
    std::ofstream out(script);
    out << "grep -q 'declare-fun p_f_1' \"$1\" && echo unsat || echo unknown\n";
  }
  const SolveResult t = solve_external(fm::pos(f, 1), {"sh " + script.string() + " {file}", std::chrono::milliseconds(5000)});
  EXPECT_EQ(t.status, Status::Unsat) << t.diagnostic;
  fs::remove(script);
}

TEST(ExternalSolver, Timeout) {
  const SolveResult r = solve_external(fm::pos(f, 1), {"sleep 10", std::chrono::milliseconds(200)});
  EXPECT_EQ(r.status, Status::TimedOut);
}

TEST(ExternalSolver, Z3Basics) {
  if (!on_path("z3")) GTEST_SKIP() << "z3 not installed";
  EXPECT_EQ(solve_external(encode_san(h), z3()).status, Status::Sat);
  EXPECT_EQ(solve_external(fm::all({fm::pos(f, 1), fm::neg(fm::pos(f, 1))}), z3()).status, Status::Unsat);
}

TEST(ExternalSolver, AgreesWithInternalOnCorpus) {
  if (!on_path("z3")) GTEST_SKIP() << "z3 not installed";
  int compared = 0;
  for (const auto& e : fs::directory_iterator(MPROJ_CORPUS_DIR)) {
    if (e.path().extension() != ".trs") continue;
    const DPProblem dp = dependency_pairs(parse_trs(read_text(e.path().string())));
    const Graph g = estimated_dependency_graph(dp.pairs, dp.rules);
    for (const auto& comp : sccs(g)) {
      std::vector<Rule> pairs;
      for (auto i : comp) pairs.push_back(dp.pairs[i]);
      for (auto mode : {ProjectionMode::Simple, ProjectionMode::Recursive, ProjectionMode::Multi}) {
        const Formula phi = encode_problem(pairs, dp.rules, mode);
        const SolveResult in = solve_internal(phi, {});
        if (in.status == Status::Unknown) continue;
        const SolveResult ex = solve_external(phi, z3());
        ASSERT_NE(ex.status, Status::Unknown) << ex.diagnostic;
        EXPECT_EQ(in.status, ex.status) << e.path() << " " << to_string(mode);
        if (ex.status == Status::Sat) {
          std::string why;
          EXPECT_TRUE(certify_model(ex.model, pairs, dp.rules, mode, why).has_value()) << why;
        }
        ++compared;
      }
    }
  }
  EXPECT_GT(compared, 30);
}

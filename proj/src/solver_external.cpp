#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "mproj/smt.hpp"
#include "mproj/subprocess.hpp"

namespace mproj {

void validate(const SolverHandle& handle) {
  if (const auto* in = std::get_if<InternalSolverConfig>(&handle)) {
    if (in->weight_bound < 1 || in->multiplicity_bound < 1)
      throw std::invalid_argument("internal solver bounds must be at least 1");
  } else {
    const auto& ex = std::get<ExternalSolverConfig>(handle);
    if (ex.timeout.count() <= 0) throw std::invalid_argument("solver timeout must be positive");
    if (ex.command.find_first_not_of(" \t") == std::string::npos)
      throw std::invalid_argument("empty solver command");
  }
}

namespace {

constexpr std::string_view kFileToken = "{file}";

// Removes the script file when the query ends.
class TempScript {
 public:
  explicit TempScript(const std::string& text) {
    const char* dir = std::getenv("TMPDIR");
    std::string templ = std::string(dir && *dir ? dir : "/tmp") + "/mproj-XXXXXX.smt2";
    const int fd = ::mkstemps(templ.data(), 5);
    if (fd < 0) return;
    ::close(fd);
    std::ofstream(templ) << text;
    path_ = templ;
  }
  TempScript(const TempScript&) = delete;
  TempScript& operator=(const TempScript&) = delete;
  ~TempScript() {
    if (!path_.empty()) ::unlink(path_.c_str());
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

SolveResult solve_external(const Formula& formula, const ExternalSolverConfig& config,
                           const SolveContext& ctx) {
  validate(SolverHandle{config});
  SolveResult r;
  const SmtScript script = to_smtlib(formula);

  SolveContext local{std::min(ctx.deadline, std::chrono::steady_clock::now() + config.timeout), ctx.stop};

  std::vector<std::string> argv;
  std::istringstream words(config.command);
  for (std::string w; words >> w;) argv.push_back(w);

  std::optional<TempScript> file;
  std::string input = script.text;
  for (auto& a : argv) {
    if (const auto at = a.find(kFileToken); at != std::string::npos) {
      if (!file) file.emplace(script.text);
      if (file->path().empty()) {
        r.diagnostic = "spawn failure: cannot create temporary script file";
        return r;
      }
      a.replace(at, kFileToken.size(), file->path());
      input.clear();
    }
  }

  const ProcessResult proc = run_process(argv, input, local);
  if (!proc.spawned) {
    r.diagnostic = proc.spawn_error;
    return r;
  }
  if (proc.timed_out) {
    r.status = SolveResult::Status::TimedOut;
    r.diagnostic = "solver exceeded its time limit";
    return r;
  }

  std::istringstream out(proc.out);
  std::string verdict;
  out >> verdict;
  if (verdict == "unsat") {
    r.status = SolveResult::Status::Unsat;
  } else if (verdict == "sat") {
    const std::size_t rest = proc.out.find("sat") + 3;
    try {
      r.model = parse_model(std::string_view(proc.out).substr(rest), script.names);
      r.status = SolveResult::Status::Sat;
    } catch (const SExprError& e) {
      r.diagnostic = std::string("unparseable model: ") + e.what();
    }
  } else if (verdict == "timeout") {
    r.status = SolveResult::Status::TimedOut;
  } else {
    r.diagnostic = "solver answered '" + first_line(proc.out) + "'";
    if (!proc.err.empty()) r.diagnostic += "; stderr: " + first_line(proc.err);
    if (proc.exit_status > 0) r.diagnostic += "; exit status " + std::to_string(proc.exit_status);
  }
  return r;
}

namespace {

class InternalSolver final : public Solver {
 public:
  explicit InternalSolver(InternalSolverConfig c) : config_(c) {}
  SolveResult solve(const Formula& f, const SolveContext& ctx) const override {
    return solve_internal(f, config_, ctx);
  }
  std::string describe() const override {
    return "internal (weights <= " + std::to_string(config_.weight_bound) + ")";
  }

 private:
  InternalSolverConfig config_;
};

class ExternalSolver final : public Solver {
 public:
  explicit ExternalSolver(ExternalSolverConfig c) : config_(std::move(c)) {}
  SolveResult solve(const Formula& f, const SolveContext& ctx) const override {
    return solve_external(f, config_, ctx);
  }
  std::string describe() const override { return "external: " + config_.command; }

 private:
  ExternalSolverConfig config_;
};

}  // namespace

std::unique_ptr<Solver> make_solver(const SolverHandle& handle) {
  validate(handle);
  if (const auto* in = std::get_if<InternalSolverConfig>(&handle))
    return std::make_unique<InternalSolver>(*in);
  return std::make_unique<ExternalSolver>(std::get<ExternalSolverConfig>(handle));
}

}  // namespace mproj

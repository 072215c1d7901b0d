// multiproj: termination proofs with the generalized subterm criterion.
//
//   multiproj prove FILE [--mode M] [--solver CMD|internal] [--timeout S] [--proof text|json|none]
//   multiproj bench DIR [--mode M]... [--solver ...] [--timeout S] [--jobs N] [--csv FILE]

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mproj/dp.hpp"
#include "mproj/parser.hpp"
#include "mproj/report.hpp"

namespace fs = std::filesystem;
using namespace mproj;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitMaybe = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitUsage = 3;
constexpr int kExitUnreadable = 4;
constexpr int kExitParse = 5;

constexpr const char* kSolverEnv = "MPROJ_SOLVER";

struct SolverOptions {
  std::string solver;
  double timeout = 60;
  int weight_bound = 2;
};

SolverHandle make_handle(const SolverOptions& opts) {
  std::string cmd = opts.solver;
  if (cmd.empty()) {
    const char* env = std::getenv(kSolverEnv);
    cmd = env && *env ? env : "internal";
  }
  if (cmd == "internal") return InternalSolverConfig{opts.weight_bound, InternalSolverConfig{}.multiplicity_bound};
  return ExternalSolverConfig{cmd, std::chrono::milliseconds(static_cast<long long>(opts.timeout * 1000))};
}

std::chrono::milliseconds budget(double seconds) {
  return std::chrono::milliseconds(static_cast<long long>(seconds * 1000));
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return kExitYes;
    case Verdict::Maybe:
      return kExitMaybe;
    case Verdict::Timeout:
      return kExitTimeout;
  }
  return kExitMaybe;
}

int run_prove(const std::string& file, const std::string& mode, const SolverOptions& opts,
              const std::string& proof_format) {
  const auto text = read_file(file);
  if (!text || fs::is_directory(file)) {
    std::cerr << "error: cannot read '" << file << "'\n";
    return kExitUnreadable;
  }
  TRS trs;
  try {
    trs = parse_trs(*text);
  } catch (const ParseError& e) {
    std::cerr << "error: " << file << ":" << e.what() << "\n";
    return kExitParse;
  }
  const ProofTree proof = prove_termination(trs, parse_strategy(mode), make_handle(opts), budget(opts.timeout));
  if (proof_format == "json") {
    std::cout << to_string(proof.verdict) << "\n" << proof_to_json(proof).dump(2) << "\n";
  } else if (proof_format == "none") {
    std::cout << to_string(proof.verdict) << "\n";
  } else {
    std::cout << proof_to_text(proof);
  }
  return exit_code(proof.verdict);
}

int run_bench(const std::string& dir, std::vector<std::string> modes, const SolverOptions& opts,
              unsigned jobs, const std::string& csv_path) {
  if (!fs::is_directory(dir)) {
    std::cerr << "error: '" << dir << "' is not a directory\n";
    return kExitUnreadable;
  }
  if (modes.empty()) modes = {"simple", "recursive", "multi", "all"};

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".trs") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  struct Job {
    fs::path file;
    std::string mode;
  };
  std::vector<Job> work;
  for (const auto& f : files)
    for (const auto& m : modes) work.push_back({f, m});

  const SolverHandle handle = make_handle(opts);
  std::vector<BenchRow> rows(work.size());
  std::vector<std::string> warnings(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < work.size();) {
      const auto& job = work[i];
      BenchRow& row = rows[i];
      row.file = job.file.filename().string();
      row.mode = job.mode;
      const auto start = std::chrono::steady_clock::now();
      try {
        const auto text = read_file(job.file);
        if (!text) throw std::runtime_error("cannot read file");
        const TRS trs = parse_trs(*text);
        const ProofTree proof = prove_termination(trs, parse_strategy(job.mode), handle, budget(opts.timeout));
        row.verdict = proof.verdict;
        row.pairs_total = proof.pairs_total;
        row.pairs_removed = proof.pairs_removed();
      } catch (const std::exception& e) {
        row.verdict = Verdict::Maybe;
        warnings[i] = "warning: skipping " + row.file + ": " + e.what();
      }
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < std::max(1u, jobs); ++k) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < warnings.size(); ++i)
    if (!warnings[i].empty() && (i == 0 || work[i].file != work[i - 1].file)) std::cerr << warnings[i] << "\n";

  std::cout << bench_table(rows, modes);
  const std::string csv = bench_csv(rows);
  if (csv_path.empty()) {
    std::cout << "\n" << csv;
  } else {
    std::ofstream out(csv_path);
    if (!out) {
      std::cerr << "error: cannot write '" << csv_path << "'\n";
      return kExitUnreadable;
    }
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Termination proofs for term rewriting via the generalized subterm criterion"};
  app.require_subcommand(1);

  const std::vector<std::string> strategies{"simple", "recursive", "multi", "all"};
  SolverOptions opts;
  const std::string solver_help =
      std::string("'internal' or an SMT solver command line (use {file} for a script file); default from ") +
      kSolverEnv + ", else internal";

  auto* prove = app.add_subcommand("prove", "Prove termination of a TPDB .trs file");
  std::string file, mode = "all", proof_format = "text";
  prove->add_option("file", file, "TRS file")->required();
  prove->add_option("--mode", mode, "Projection kind")->check(CLI::IsMember(strategies));
  prove->add_option("--solver", opts.solver, solver_help);
  prove->add_option("--timeout", opts.timeout, "Time limit in seconds")->check(CLI::PositiveNumber);
  prove->add_option("--weight-bound", opts.weight_bound, "Largest weight tried by the internal solver")
      ->check(CLI::PositiveNumber);
  prove->add_option("--proof", proof_format, "Proof output")->check(CLI::IsMember({"text", "json", "none"}));

  auto* bench = app.add_subcommand("bench", "Run every .trs file of a directory and summarize");
  std::string dir, csv_path;
  std::vector<std::string> modes;
  unsigned jobs = 1;
  bench->add_option("dir", dir, "Directory of .trs files")->required();
  bench->add_option("--mode", modes, "Projection kinds (repeatable; default: all four)")
      ->check(CLI::IsMember(strategies));
  bench->add_option("--solver", opts.solver, solver_help);
  bench->add_option("--timeout", opts.timeout, "Per-problem time limit in seconds")->check(CLI::PositiveNumber);
  bench->add_option("--weight-bound", opts.weight_bound, "Largest weight tried by the internal solver")
      ->check(CLI::PositiveNumber);
  bench->add_option("--jobs", jobs, "Files processed in parallel");
  bench->add_option("--csv", csv_path, "Write the per-file CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*prove) return run_prove(file, mode, opts, proof_format);
    return run_bench(dir, modes, opts, jobs, csv_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

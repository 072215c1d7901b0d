#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mproj/dp.hpp"

namespace mproj {

// First line is the verdict, followed by the steps and any unsolved
// components.
std::string proof_to_text(const ProofTree& proof);

// {"verdict", "strategy", "pairs_total", "steps": [{"scc", "mode",
// "projection": {symbol: [index, ...]}, "removed"}], "open": [[rule, ...]]}
nlohmann::json proof_to_json(const ProofTree& proof);

// Inverse of proof_to_json; symbols and variables are resolved against the
// system the proof was produced for. Throws std::invalid_argument on schema
// violations.
ProofTree proof_from_json(const nlohmann::json& doc, const TRS& trs);

// Re-checks every step with verify_solution against the rules of `trs`.
// Returns an empty string on success, otherwise the first problem found.
std::string replay_proof(const ProofTree& proof, const TRS& trs);

struct BenchRow {
  std::string file;
  std::string mode;
  Verdict verdict = Verdict::Maybe;
  double seconds = 0;
  std::size_t pairs_total = 0;
  std::size_t pairs_removed = 0;
};

// Per-mode counts and cumulative seconds for YES / MAYBE / TIMEOUT, in the
// order modes are given.
std::string bench_table(const std::vector<BenchRow>& rows, const std::vector<std::string>& modes);

// Header: file,mode,verdict,seconds,pairs_total,pairs_removed
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace mproj

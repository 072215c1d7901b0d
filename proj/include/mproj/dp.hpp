#pragma once

// Dependency pair framework driven by the generalized subterm criterion:
// dependency pairs, estimated dependency graph, SCC decomposition, and the
// processor loop.

#include <chrono>
#include <cstddef>
#include <optional>
#include <set>
#include <stop_token>
#include <string>
#include <vector>

#include "mproj/projection.hpp"
#include "mproj/smt.hpp"
#include "mproj/term.hpp"

namespace mproj {

struct DPProblem {
  std::vector<Rule> pairs;
  std::vector<Rule> rules;
};

std::set<Symbol> defined_symbols(const std::vector<Rule>& rules);

// P = { l# -> u# | l -> r in R, u a subterm of r with defined root }.
// Pairs are listed per rule in pre-order of the rhs, without duplicates.
DPProblem dependency_pairs(const TRS& trs);

// Adjacency lists over indices into `pairs`.
using Graph = std::vector<std::vector<std::size_t>>;

// Edge i -> j iff REN(CAP(rhs_i)) unifies with a renamed copy of lhs_j, where
// CAP abstracts subterms with a defined root of `rules` to fresh variables.
Graph estimated_dependency_graph(const std::vector<Rule>& pairs, const std::vector<Rule>& rules);

// Nontrivial strongly connected components (singletons only with a
// self-loop), sources of the condensation first, members ascending.
std::vector<std::vector<std::size_t>> sccs(const Graph& graph);

enum class Verdict { Yes, Maybe, Timeout };
std::string to_string(Verdict v);

struct ProofStep {
  std::vector<Rule> scc;
  ProjectionMode mode = ProjectionMode::Multi;
  Multiprojection projection;
  std::vector<Rule> removed;
};

struct ProofTree {
  Verdict verdict = Verdict::Maybe;
  std::string strategy;  // "simple", "recursive", "multi" or "all"
  std::size_t pairs_total = 0;
  std::vector<ProofStep> steps;
  std::vector<std::vector<Rule>> open;  // components left unsolved

  std::size_t pairs_removed() const;
};

struct ProcessorOutcome {
  std::optional<ProofStep> step;
  bool timed_out = false;
  std::string diagnostic;  // solver trouble or a rejected model
};

// Searches for a multiprojection satisfying the criterion on (P, R) that
// strictly orients at least one pair. A solver model is only accepted after
// verify_solution confirms it; removed pairs are those verified strict.
ProcessorOutcome subterm_processor(const std::vector<Rule>& pairs, const std::vector<Rule>& rules,
                                   ProjectionMode mode, const Solver& solver,
                                   const SolveContext& ctx = {});

// Decodes and re-verifies a model. Returns the accepted step or nullopt with
// the reason in `why`.
std::optional<ProofStep> certify_model(const Model& model, const std::vector<Rule>& pairs,
                                       const std::vector<Rule>& rules, ProjectionMode mode,
                                       std::string& why);

// Single-mode proof search until every component is emptied, one resists, or
// the context expires.
ProofTree prove_termination(const TRS& trs, ProjectionMode mode, const Solver& solver,
                            const SolveContext& ctx = {});

enum class Strategy { Simple, Recursive, Multi, All };
std::string to_string(Strategy s);
// Accepts the mode names and "all"; throws std::invalid_argument otherwise.
Strategy parse_strategy(std::string_view name);

// Top level: `All` runs the three modes concurrently, each with its own solver
// instance. The reported proof is the YES proof of the first mode in the order
// simple, recursive, multi; otherwise TIMEOUT beats MAYBE.
ProofTree prove_termination(const TRS& trs, Strategy strategy, const SolverHandle& handle,
                            std::chrono::milliseconds budget, std::stop_token stop = {});

}  // namespace mproj

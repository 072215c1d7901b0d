#pragma once

// SMT-LIB 2 serialization, an external-solver driver and a bounded internal
// enumeration solver for projection formulas.

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <string_view>
#include <variant>

#include "mproj/formula.hpp"

namespace mproj {

// Deterministic SMT-LIB names for Pos/Wt variables: p_<f>_<i> and w_<f>_<i>,
// where every non-alphanumeric character of the symbol is written _x<hex>.
// A name already taken by another variable gets a #k suffix (quoted |...|).
class NameTable {
 public:
  const std::string& intern(const VarRef& v);
  std::optional<VarRef> lookup(std::string_view name) const;
  const std::map<VarRef, std::string>& names() const { return by_var_; }

  static std::string base_name(const VarRef& v);

 private:
  std::map<VarRef, std::string> by_var_;
  std::map<std::string, VarRef, std::less<>> by_name_;
};

struct SmtScript {
  std::string text;
  NameTable names;
};

// (set-logic QF_LIA) or, when weight products make it nonlinear, QF_NIA;
// declarations in name order; one assert; (check-sat) (get-model).
SmtScript to_smtlib(const Formula& formula);

class SExprError : public std::runtime_error {
 public:
  SExprError(std::size_t offset, const std::string& message);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Reads `(define-fun <name> () <Sort> <value>)` entries, optionally wrapped in
// a list or `(model ...)`. Every variable of `names` gets a value; omitted ones
// default to false / 0. Unknown names are ignored.
Model parse_model(std::string_view text, const NameTable& names);

struct SolveResult {
  enum class Status { Sat, Unsat, Unknown, TimedOut };
  Status status = Status::Unknown;
  Model model;
  std::string diagnostic;
};

std::string to_string(SolveResult::Status s);

// Wall-clock deadline plus cooperative cancellation.
struct SolveContext {
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
  std::stop_token stop;

  bool expired() const {
    return stop.stop_requested() || std::chrono::steady_clock::now() >= deadline;
  }
};

struct InternalSolverConfig {
  int weight_bound = 2;         // Wt values tried: 1..weight_bound
  int multiplicity_bound = 8;   // max |π(f)| per symbol
};

struct ExternalSolverConfig {
  // Whitespace-separated command line. If it contains {file}, the script is
  // written to a temporary file substituted there; otherwise it goes to stdin.
  std::string command;
  std::chrono::milliseconds timeout{60000};
};

using SolverHandle = std::variant<InternalSolverConfig, ExternalSolverConfig>;

// Throws std::invalid_argument on non-positive bounds or timeout.
void validate(const SolverHandle& handle);

inline constexpr std::size_t kInternalPosLimit = 20;

// Enumerates Pos assignments (variables in name order, false before true) and
// weights 1..bound for active positions (inactive ones read 1) and returns the
// first model found. Partial assignments are pruned by interval evaluation.
SolveResult solve_internal(const Formula& formula, const InternalSolverConfig& config,
                           const SolveContext& ctx = {});

SolveResult solve_external(const Formula& formula, const ExternalSolverConfig& config,
                           const SolveContext& ctx = {});

class Solver {
 public:
  virtual ~Solver() = default;
  virtual SolveResult solve(const Formula& formula, const SolveContext& ctx) const = 0;
  virtual std::string describe() const = 0;
};

std::unique_ptr<Solver> make_solver(const SolverHandle& handle);

}  // namespace mproj

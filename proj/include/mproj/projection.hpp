#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mproj/multiset.hpp"
#include "mproj/term.hpp"

namespace mproj {

enum class ProjectionMode { Simple, Recursive, Multi };

std::string to_string(ProjectionMode mode);
// Accepts "simple", "recursive", "multi"; throws std::invalid_argument otherwise.
ProjectionMode parse_mode(std::string_view name);

// Maps each symbol to a multiset of 1-based argument indices. Symbols not
// mentioned project to the empty multiset.
class Multiprojection {
 public:
  // Throws std::invalid_argument if an index is outside 1..arity(f).
  void set(const Symbol& f, Multiset<std::size_t> indices);
  const Multiset<std::size_t>& of(const Symbol& f) const;
  bool projects(const Symbol& f) const { return !of(f).empty(); }

  const std::map<Symbol, Multiset<std::size_t>>& entries() const { return entries_; }

  // "f# -> {1,1,2}; g -> {1}" in symbol order, empty entries omitted.
  std::string to_string() const;

  friend bool operator==(const Multiprojection&, const Multiprojection&) = default;

 private:
  std::map<Symbol, Multiset<std::size_t>> entries_;
};

// π(f(t1..tn)) = π(t_i1) + ... + π(t_ik) when π(f) = {i1..ik} ≠ ∅, else {t}.
Multiset<Term> apply_projection(const Multiprojection& pi, const Term& t);

// Proper-superterm relation as a Relation<Term>.
const Relation<Term>& superterm_relation();

std::string to_string(const Multiset<Term>& m);

struct Verification {
  bool ok = false;
  std::vector<Rule> strict;   // pairs with π(s) >mul π(t)
  std::string failure;        // first violated condition when !ok
};

// Semantic re-check of a projection against a DP problem (P, R), independent
// of any encoding: every pair satisfies π(s) >=mul π(t), every rule whose lhs
// root is projected satisfies π(l) >=mul π(r).
Verification verify_solution(const Multiprojection& pi, const std::vector<Rule>& pairs,
                             const std::vector<Rule>& rules);

}  // namespace mproj

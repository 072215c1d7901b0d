#pragma once

// Constraint encoding for finding a multiprojection that satisfies the
// generalized subterm criterion on a DP problem (P, R).
//
// Pos(f,i) holds when π(f) contains index i, and Wt(f,i) is its
// multiplicity. MULT_s(u) = mul(1, s, u) is the symbolic multiplicity of u in
// π(s). Multiset comparison uses the finite-domain characterization with
// domain Subterms(s,t) and the proper-superterm relation.

#include <set>
#include <stdexcept>
#include <vector>

#include "mproj/formula.hpp"
#include "mproj/projection.hpp"
#include "mproj/term.hpp"

namespace mproj {

IntExpr encode_mul(const IntExpr& w, const Term& s, const Term& t);
inline IntExpr encode_mult(const Term& s, const Term& u) { return encode_mul(fm::lit(1), s, u); }

// π(s) >=mul-side condition: ∀u ∈ Subterms(s,t). UPPER(u) ⟹ MULT_s(u) ≥ MULT_t(u)
Formula encode_geq(const Term& s, const Term& t);
// π(s) ≠ π(t)
Formula encode_neq(const Term& s, const Term& t);
// Some argument of the root of lhs is projected. Throws std::invalid_argument
// for a variable.
Formula encode_rt(const Term& lhs);
// Pos(f,i) ⟹ Wt(f,i) > 0 and Wt(f,i) ≥ 0 for every position of f.
Formula encode_san(const Symbol& f);

Formula mode_constraints(ProjectionMode mode, const std::set<Symbol>& signature,
                         const std::set<Symbol>& marked_roots);

// Symbols of P and R.
std::set<Symbol> problem_signature(const std::vector<Rule>& pairs, const std::vector<Rule>& rules);

// Throws std::invalid_argument when pairs is empty.
Formula encode_problem(const std::vector<Rule>& pairs, const std::vector<Rule>& rules,
                       ProjectionMode mode);

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// π(f) gets index i with multiplicity Wt(f,i) whenever Pos(f,i). Throws
// ModelError when a projected position has a non-positive weight.
Multiprojection decode_model(const Model& model, const std::set<Symbol>& signature);

}  // namespace mproj

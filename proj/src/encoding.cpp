#include "mproj/encoding.hpp"

#include <unordered_map>

namespace mproj {

IntExpr encode_mul(const IntExpr& w, const Term& s, const Term& t) {
  if (s == t) {
    if (s.is_var()) return w;
    std::vector<BoolExpr> none;
    for (std::size_t i = 1; i <= s.symbol().arity; ++i) none.push_back(fm::neg(fm::pos(s.symbol(), i)));
    return fm::ite(fm::all(none), w, fm::lit(0));
  }
  if (!strict_superterm(s, t)) return fm::lit(0);
  const Symbol& f = s.symbol();
  std::vector<IntExpr> parts;
  for (std::size_t i = 1; i <= f.arity; ++i) {
    const Term& arg = s.args()[i - 1];
    if (arg != t && !strict_superterm(arg, t)) continue;
    parts.push_back(fm::ite(fm::pos(f, i), encode_mul(fm::prod({w, fm::wt(f, i)}), arg, t), fm::lit(0)));
  }
  return fm::sum(parts);
}

namespace {

// MULT_s(u) and MULT_t(u) for every u in Subterms(s,t).
struct PairMults {
  std::vector<Term> domain;
  std::vector<IntExpr> left;
  std::vector<IntExpr> right;
  bool same;

  PairMults(const Term& s, const Term& t) : domain(subterms(s, t)), same(s == t) {
    left.reserve(domain.size());
    right.reserve(domain.size());
    for (const auto& u : domain) {
      left.push_back(encode_mult(s, u));
      right.push_back(encode_mult(t, u));
    }
  }

  Formula geq() const {
    if (same) return fm::top();
    std::vector<BoolExpr> conj;
    for (std::size_t k = 0; k < domain.size(); ++k) {
      std::vector<BoolExpr> upper;
      for (std::size_t j = 0; j < domain.size(); ++j)
        if (strict_superterm(domain[j], domain[k])) upper.push_back(fm::eq(left[j], right[j]));
      conj.push_back(fm::implies(fm::all(upper), fm::ge(left[k], right[k])));
    }
    return fm::all(conj);
  }

  Formula neq() const {
    if (same) return fm::bottom();
    std::vector<BoolExpr> disj;
    for (std::size_t k = 0; k < domain.size(); ++k) disj.push_back(fm::neg(fm::eq(left[k], right[k])));
    return fm::any(disj);
  }
};

}  // namespace

Formula encode_geq(const Term& s, const Term& t) { return PairMults(s, t).geq(); }
Formula encode_neq(const Term& s, const Term& t) { return PairMults(s, t).neq(); }

Formula encode_rt(const Term& lhs) {
  if (lhs.is_var()) throw std::invalid_argument("malformed rule: variable left-hand side");
  std::vector<BoolExpr> disj;
  for (std::size_t i = 1; i <= lhs.symbol().arity; ++i) disj.push_back(fm::pos(lhs.symbol(), i));
  return fm::any(disj);
}

Formula encode_san(const Symbol& f) {
  std::vector<BoolExpr> conj;
  for (std::size_t i = 1; i <= f.arity; ++i) {
    conj.push_back(fm::implies(fm::pos(f, i), fm::gt(fm::wt(f, i), fm::lit(0))));
    conj.push_back(fm::ge(fm::wt(f, i), fm::lit(0)));
  }
  return fm::all(conj);
}

namespace {

Formula unit_weights(const Symbol& f) {
  std::vector<BoolExpr> conj;
  for (std::size_t i = 1; i <= f.arity; ++i)
    conj.push_back(fm::implies(fm::pos(f, i), fm::eq(fm::wt(f, i), fm::lit(1))));
  return fm::all(conj);
}

Formula at_most_one(const Symbol& f) {
  std::vector<BoolExpr> conj;
  for (std::size_t i = 1; i <= f.arity; ++i)
    for (std::size_t j = i + 1; j <= f.arity; ++j)
      conj.push_back(fm::neg(fm::all({fm::pos(f, i), fm::pos(f, j)})));
  return fm::all(conj);
}

}  // namespace

Formula mode_constraints(ProjectionMode mode, const std::set<Symbol>& signature,
                         const std::set<Symbol>& marked_roots) {
  std::vector<BoolExpr> conj;
  switch (mode) {
    case ProjectionMode::Multi:
      return fm::top();
    case ProjectionMode::Recursive:
      for (const auto& f : signature) {
        conj.push_back(at_most_one(f));
        conj.push_back(unit_weights(f));
      }
      return fm::all(conj);
    case ProjectionMode::Simple:
      for (const auto& f : signature) {
        if (marked_roots.contains(f)) {
          // Nullary roots have nothing to project to.
          if (f.arity == 0) continue;
          std::vector<BoolExpr> some;
          for (std::size_t i = 1; i <= f.arity; ++i) some.push_back(fm::pos(f, i));
          conj.push_back(fm::any(some));
          conj.push_back(at_most_one(f));
          conj.push_back(unit_weights(f));
        } else {
          for (std::size_t i = 1; i <= f.arity; ++i) conj.push_back(fm::neg(fm::pos(f, i)));
        }
      }
      return fm::all(conj);
  }
  throw std::logic_error("unreachable projection mode");
}

std::set<Symbol> problem_signature(const std::vector<Rule>& pairs, const std::vector<Rule>& rules) {
  std::set<Symbol> out;
  for (const auto* set : {&pairs, &rules})
    for (const auto& r : *set) {
      collect_symbols(r.lhs, out);
      collect_symbols(r.rhs, out);
    }
  return out;
}

Formula encode_problem(const std::vector<Rule>& pairs, const std::vector<Rule>& rules,
                       ProjectionMode mode) {
  if (pairs.empty()) throw std::invalid_argument("encode_problem: no pairs");

  std::vector<BoolExpr> conj;
  std::vector<BoolExpr> some_strict;
  std::set<Symbol> roots;
  for (const auto& p : pairs) {
    PairMults mults(p.lhs, p.rhs);
    conj.push_back(mults.geq());
    some_strict.push_back(mults.neq());
    if (!p.lhs.is_var()) roots.insert(p.lhs.symbol());
    if (!p.rhs.is_var()) roots.insert(p.rhs.symbol());
  }
  conj.push_back(fm::any(some_strict));
  for (const auto& r : rules) conj.push_back(fm::implies(encode_rt(r.lhs), encode_geq(r.lhs, r.rhs)));

  const auto signature = problem_signature(pairs, rules);
  for (const auto& f : signature) conj.push_back(encode_san(f));
  conj.push_back(mode_constraints(mode, signature, roots));
  return fm::all(conj);
}

Multiprojection decode_model(const Model& model, const std::set<Symbol>& signature) {
  Multiprojection pi;
  for (const auto& f : signature) {
    Multiset<std::size_t> indices;
    for (std::size_t i = 1; i <= f.arity; ++i) {
      if (!model.pos(f, i)) continue;
      const auto w = model.wt(f, i);
      if (w <= 0)
        throw ModelError("model assigns Pos(" + f.to_string() + "," + std::to_string(i) +
                         ") with weight " + std::to_string(w));
      indices.add(i, static_cast<std::size_t>(w));
    }
    pi.set(f, std::move(indices));
  }
  return pi;
}

}  // namespace mproj

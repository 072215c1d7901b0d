#pragma once

// Shared fixtures and generators for the unit tests and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mproj/formula.hpp"
#include "mproj/multiset.hpp"
#include "mproj/parser.hpp"
#include "mproj/projection.hpp"
#include "mproj/term.hpp"

namespace mproj::testing {

inline Symbol sym(const std::string& name, std::size_t arity, bool marked = false) {
  return Symbol{name, arity, marked};
}

inline const std::set<std::string>& default_vars() {
  static const std::set<std::string> vars{"x", "y", "z", "u", "v", "w"};
  return vars;
}

inline Term term(const std::string& text) { return parse_term(text, default_vars()); }

inline Rule rule(const std::string& lhs, const std::string& rhs) { return Rule{term(lhs), term(rhs)}; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const char* const kQuotMinus =
    "(VAR x y)\n"
    "(RULES\n"
    "  minus(x,0) -> x\n"
    "  minus(s(x),s(y)) -> minus(x,y)\n"
    "  quot(0,s(y)) -> 0\n"
    "  quot(s(x),s(y)) -> s(quot(minus(x,y),s(y)))\n"
    ")\n";

// Strict order on 0..n-1: random edges along a random permutation, closed
// transitively. Irreflexive and transitive by construction.
struct RandomOrder {
  std::vector<std::vector<bool>> gt;

  bool operator()(int a, int b) const { return gt[a][b]; }
};

inline RandomOrder random_strict_order(std::mt19937& rng, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  RandomOrder r{std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
  std::bernoulli_distribution edge(0.45);
  // perm[i] > perm[j] allowed only for i > j
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (edge(rng)) r.gt[perm[i]][perm[j]] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r.gt[i][k] && r.gt[k][j]) r.gt[i][j] = true;
  return r;
}

inline Multiset<int> random_multiset(std::mt19937& rng, int carrier, int max_mult, double density = 0.5) {
  Multiset<int> m;
  std::bernoulli_distribution present(density);
  std::uniform_int_distribution<int> mult(1, max_mult);
  for (int x = 0; x < carrier; ++x)
    if (present(rng)) m.add(x, static_cast<std::size_t>(mult(rng)));
  return m;
}

// Random term over f/2, g/1, h/2, a/0, b/0 and variables x, y.
inline Term random_term(std::mt19937& rng, int depth) {
  static const std::vector<Symbol> funs{sym("f", 2), sym("g", 1), sym("h", 2)};
  static const std::vector<Symbol> consts{sym("a", 0), sym("b", 0)};
  std::uniform_int_distribution<int> pick(0, 9);
  const int k = pick(rng);
  if (depth == 0 || k < 3) {
    if (k % 2 == 0) return Term::var(k < 2 ? "x" : "y");
    return Term::app(consts[k % 2 == 1 ? 0 : 1]);
  }
  const Symbol& f = funs[k % 3];
  std::vector<Term> args;
  for (std::size_t i = 0; i < f.arity; ++i) args.push_back(random_term(rng, depth - 1));
  return Term::app(f, std::move(args));
}

// Projectable (arity > 0) symbols of s and t.
inline std::vector<Symbol> projectable_symbols(const Term& s, const Term& t) {
  std::set<Symbol> syms;
  collect_symbols(s, syms);
  collect_symbols(t, syms);
  std::vector<Symbol> out;
  for (const auto& f : syms)
    if (f.arity > 0) out.push_back(f);
  return out;
}

// Every assignment of Pos over the positions of `symbols` and of weights in
// 1..max_weight to the active positions. Calls visit(model) for each.
template <typename Visit>
void for_each_assignment(const std::vector<Symbol>& symbols, int max_weight, Visit visit) {
  std::vector<std::pair<Symbol, std::size_t>> slots;
  for (const auto& f : symbols)
    for (std::size_t i = 1; i <= f.arity; ++i) slots.emplace_back(f, i);
  // per slot: 0 = inactive, 1..max_weight = active with that weight
  std::vector<int> state(slots.size(), 0);
  while (true) {
    Model m;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      m.set_pos(slots[k].first, slots[k].second, state[k] > 0);
      m.set_wt(slots[k].first, slots[k].second, state[k] > 0 ? state[k] : 1);
    }
    visit(m);
    std::size_t k = 0;
    while (k < slots.size() && state[k] == max_weight) state[k++] = 0;
    if (k == slots.size()) return;
    ++state[k];
  }
}

// π built straight from a model, without going through decode_model.
inline Multiprojection projection_of(const Model& m, const std::vector<Symbol>& symbols) {
  Multiprojection pi;
  for (const auto& f : symbols) {
    Multiset<std::size_t> idx;
    for (std::size_t i = 1; i <= f.arity; ++i)
      if (m.pos(f, i)) idx.add(i, static_cast<std::size_t>(m.wt(f, i)));
    if (!idx.empty()) pi.set(f, idx);
  }
  return pi;
}

// Reference π(t), written directly from the recursive definition.
inline void reference_projection(const Multiprojection& pi, const Term& t, std::size_t times,
                                 Multiset<Term>& out) {
  if (t.is_var() || pi.of(t.symbol()).empty()) {
    out.add(t, times);
    return;
  }
  for (const auto& [i, c] : pi.of(t.symbol()).counts())
    reference_projection(pi, t.args()[i - 1], times * c, out);
}

inline Multiset<Term> reference_projection(const Multiprojection& pi, const Term& t) {
  Multiset<Term> out;
  reference_projection(pi, t, 1, out);
  return out;
}

// Fixture term pairs for the encoding checks.
inline std::vector<std::pair<Term, Term>> encoding_fixtures() {
  const std::vector<std::pair<const char*, const char*>> text{
      {"f(x,y)", "x"},
      {"f(x,y)", "f(y,x)"},
      {"g(x)", "x"},
      {"g(g(x))", "g(x)"},
      {"g(x)", "g(x)"},
      {"a", "b"},
      {"f(g(x),y)", "f(y,x)"},
      {"f(x,x)", "g(x)"},
      {"h(g(x),a)", "h(x,g(a))"},
      {"f(g(y),x)", "f(x,y)"},
      {"g(f(x,y))", "f(g(x),y)"},
      {"f(x,g(y))", "g(f(x,y))"},
      {"h(x,y)", "h(y,y)"},
      {"f(g(g(x)),y)", "f(g(x),g(y))"},
      {"g(h(x,y))", "h(g(x),y)"},
      {"f(a,x)", "f(x,a)"},
      {"h(f(x,y),y)", "f(x,h(y,y))"},
      {"g(g(g(x)))", "g(x)"},
      {"f(x,y)", "g(g(x))"},
      {"h(a,g(b))", "h(g(a),b)"},
      {"x", "g(x)"},
      {"f(g(x),g(x))", "g(g(x))"},
  };
  std::vector<std::pair<Term, Term>> out;
  for (const auto& [s, t] : text) out.emplace_back(term(s), term(t));
  return out;
}

}  // namespace mproj::testing

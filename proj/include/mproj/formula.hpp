#pragma once

// Sorted formula AST for the projection constraints: boolean position
// variables Pos(f,i), integer weight variables Wt(f,i), literals, ite, sums,
// products, comparisons and the usual connectives.
//
// Builders normalize as they go (literal folding, flattening of sums,
// products, conjunctions and disjunctions). Normalization never changes the
// value of a formula under any assignment.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mproj/term.hpp"

namespace mproj {

enum class VarKind { Pos, Wt };

struct VarRef {
  VarKind kind;
  Symbol symbol;
  std::size_t index;  // 1-based argument position

  std::string to_string() const;
  friend auto operator<=>(const VarRef&, const VarRef&) = default;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

enum class Op {
  // integer sort
  Lit,
  Wt,
  Ite,
  Sum,
  Prod,
  // boolean sort
  True,
  False,
  Pos,
  Not,
  And,
  Or,
  Implies,
  Ge,
  Eq,
  Gt,
};

bool is_int_op(Op op);

struct FormulaNode {
  Op op;
  std::int64_t value = 0;  // Lit
  std::optional<VarRef> var;  // Wt, Pos
  std::vector<std::shared_ptr<const FormulaNode>> kids;
};

using NodePtr = std::shared_ptr<const FormulaNode>;

class IntExpr {
 public:
  explicit IntExpr(NodePtr n) : node_(std::move(n)) {}
  const NodePtr& node() const { return node_; }
  Op op() const { return node_->op; }
  std::optional<std::int64_t> literal() const;

 private:
  NodePtr node_;
};

class BoolExpr {
 public:
  explicit BoolExpr(NodePtr n) : node_(std::move(n)) {}
  const NodePtr& node() const { return node_; }
  Op op() const { return node_->op; }
  bool is_true() const { return node_->op == Op::True; }
  bool is_false() const { return node_->op == Op::False; }

 private:
  NodePtr node_;
};

using Formula = BoolExpr;

namespace fm {

IntExpr lit(std::int64_t v);
IntExpr wt(const Symbol& f, std::size_t i);
IntExpr ite(const BoolExpr& c, const IntExpr& then_e, const IntExpr& else_e);
IntExpr sum(const std::vector<IntExpr>& terms);
IntExpr prod(const std::vector<IntExpr>& factors);

BoolExpr top();
BoolExpr bottom();
BoolExpr pos(const Symbol& f, std::size_t i);
BoolExpr neg(const BoolExpr& a);
BoolExpr all(const std::vector<BoolExpr>& conj);
BoolExpr any(const std::vector<BoolExpr>& disj);
BoolExpr implies(const BoolExpr& a, const BoolExpr& b);
BoolExpr ge(const IntExpr& a, const IntExpr& b);
BoolExpr eq(const IntExpr& a, const IntExpr& b);
BoolExpr gt(const IntExpr& a, const IntExpr& b);

}  // namespace fm

// Values of Pos (0/1) and Wt variables. Missing variables read as false / 0.
struct Model {
  std::map<VarRef, std::int64_t> values;

  bool pos(const Symbol& f, std::size_t i) const;
  std::int64_t wt(const Symbol& f, std::size_t i) const;
  void set_pos(const Symbol& f, std::size_t i, bool v);
  void set_wt(const Symbol& f, std::size_t i, std::int64_t v);
};

std::int64_t evaluate(const IntExpr& e, const Model& m);
bool evaluate(const BoolExpr& e, const Model& m);

std::set<VarRef> variables(const BoolExpr& e);

// True when no product has more than one non-literal factor.
bool is_linear(const BoolExpr& e);

// Readable infix rendering, used in diagnostics and tests.
std::string to_string(const IntExpr& e);
std::string to_string(const BoolExpr& e);

}  // namespace mproj

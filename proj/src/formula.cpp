#include "mproj/formula.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace mproj {

std::string VarRef::to_string() const {
  return std::string(kind == VarKind::Pos ? "Pos(" : "Wt(") + symbol.to_string() + "," +
         std::to_string(index) + ")";
}

bool is_int_op(Op op) {
  switch (op) {
    case Op::Lit:
    case Op::Wt:
    case Op::Ite:
    case Op::Sum:
    case Op::Prod:
      return true;
    default:
      return false;
  }
}

std::optional<std::int64_t> IntExpr::literal() const {
  if (node_->op == Op::Lit) return node_->value;
  return std::nullopt;
}

namespace fm {
namespace {

NodePtr make(Op op, std::vector<NodePtr> kids = {}, std::int64_t value = 0,
             std::optional<VarRef> var = std::nullopt) {
  return std::make_shared<const FormulaNode>(FormulaNode{op, value, std::move(var), std::move(kids)});
}

bool same_literal(const IntExpr& a, const IntExpr& b) {
  return a.literal() && b.literal() && *a.literal() == *b.literal();
}

}  // namespace

IntExpr lit(std::int64_t v) { return IntExpr(make(Op::Lit, {}, v)); }

IntExpr wt(const Symbol& f, std::size_t i) {
  return IntExpr(make(Op::Wt, {}, 0, VarRef{VarKind::Wt, f, i}));
}

IntExpr ite(const BoolExpr& c, const IntExpr& then_e, const IntExpr& else_e) {
  if (c.is_true()) return then_e;
  if (c.is_false()) return else_e;
  if (then_e.node() == else_e.node() || same_literal(then_e, else_e)) return then_e;
  return IntExpr(make(Op::Ite, {c.node(), then_e.node(), else_e.node()}));
}

IntExpr sum(const std::vector<IntExpr>& terms) {
  std::vector<NodePtr> kids;
  std::int64_t constant = 0;
  std::function<void(const NodePtr&)> add = [&](const NodePtr& n) {
    if (n->op == Op::Lit) {
      constant += n->value;
    } else if (n->op == Op::Sum) {
      for (const auto& k : n->kids) add(k);
    } else {
      kids.push_back(n);
    }
  };
  for (const auto& t : terms) add(t.node());
  if (constant != 0) kids.push_back(make(Op::Lit, {}, constant));
  if (kids.empty()) return lit(0);
  if (kids.size() == 1) return IntExpr(kids.front());
  return IntExpr(make(Op::Sum, std::move(kids)));
}

IntExpr prod(const std::vector<IntExpr>& factors) {
  std::vector<NodePtr> kids;
  std::int64_t constant = 1;
  std::function<void(const NodePtr&)> add = [&](const NodePtr& n) {
    if (n->op == Op::Lit) {
      constant *= n->value;
    } else if (n->op == Op::Prod) {
      for (const auto& k : n->kids) add(k);
    } else {
      kids.push_back(n);
    }
  };
  for (const auto& f : factors) add(f.node());
  if (constant == 0 || kids.empty()) return lit(constant);
  if (constant != 1) kids.insert(kids.begin(), make(Op::Lit, {}, constant));
  if (kids.size() == 1) return IntExpr(kids.front());
  return IntExpr(make(Op::Prod, std::move(kids)));
}

BoolExpr top() { return BoolExpr(make(Op::True)); }
BoolExpr bottom() { return BoolExpr(make(Op::False)); }

BoolExpr pos(const Symbol& f, std::size_t i) {
  return BoolExpr(make(Op::Pos, {}, 0, VarRef{VarKind::Pos, f, i}));
}

BoolExpr neg(const BoolExpr& a) {
  if (a.is_true()) return bottom();
  if (a.is_false()) return top();
  if (a.op() == Op::Not) return BoolExpr(a.node()->kids.front());
  return BoolExpr(make(Op::Not, {a.node()}));
}

namespace {

// Shared body of conjunction/disjunction: `unit` is the neutral element,
// `zero` the absorbing one.
BoolExpr junction(Op op, Op unit, Op zero, const std::vector<BoolExpr>& parts) {
  std::vector<NodePtr> kids;
  bool absorbed = false;
  std::function<void(const NodePtr&)> add = [&](const NodePtr& n) {
    if (n->op == zero) {
      absorbed = true;
    } else if (n->op == op) {
      for (const auto& k : n->kids) add(k);
    } else if (n->op != unit) {
      kids.push_back(n);
    }
  };
  for (const auto& p : parts) add(p.node());
  if (absorbed) return BoolExpr(make(zero));
  if (kids.empty()) return BoolExpr(make(unit));
  if (kids.size() == 1) return BoolExpr(kids.front());
  return BoolExpr(make(op, std::move(kids)));
}

BoolExpr compare(Op op, const IntExpr& a, const IntExpr& b) {
  if (a.literal() && b.literal()) {
    const auto x = *a.literal(), y = *b.literal();
    const bool v = op == Op::Ge ? x >= y : op == Op::Gt ? x > y : x == y;
    return v ? top() : bottom();
  }
  if (a.node() == b.node()) return op == Op::Gt ? bottom() : top();
  return BoolExpr(make(op, {a.node(), b.node()}));
}

}  // namespace

BoolExpr all(const std::vector<BoolExpr>& conj) { return junction(Op::And, Op::True, Op::False, conj); }
BoolExpr any(const std::vector<BoolExpr>& disj) { return junction(Op::Or, Op::False, Op::True, disj); }

BoolExpr implies(const BoolExpr& a, const BoolExpr& b) {
  if (a.is_false() || b.is_true()) return top();
  if (a.is_true()) return b;
  if (b.is_false()) return neg(a);
  return BoolExpr(make(Op::Implies, {a.node(), b.node()}));
}

BoolExpr ge(const IntExpr& a, const IntExpr& b) { return compare(Op::Ge, a, b); }
BoolExpr eq(const IntExpr& a, const IntExpr& b) { return compare(Op::Eq, a, b); }
BoolExpr gt(const IntExpr& a, const IntExpr& b) { return compare(Op::Gt, a, b); }

}  // namespace fm

bool Model::pos(const Symbol& f, std::size_t i) const {
  auto it = values.find(VarRef{VarKind::Pos, f, i});
  return it != values.end() && it->second != 0;
}

std::int64_t Model::wt(const Symbol& f, std::size_t i) const {
  auto it = values.find(VarRef{VarKind::Wt, f, i});
  return it == values.end() ? 0 : it->second;
}

void Model::set_pos(const Symbol& f, std::size_t i, bool v) {
  values[VarRef{VarKind::Pos, f, i}] = v ? 1 : 0;
}

void Model::set_wt(const Symbol& f, std::size_t i, std::int64_t v) {
  values[VarRef{VarKind::Wt, f, i}] = v;
}

namespace {

std::int64_t eval_node(const FormulaNode& n, const Model& m) {
  auto var_value = [&](const VarRef& v) {
    auto it = m.values.find(v);
    return it == m.values.end() ? std::int64_t{0} : it->second;
  };
  switch (n.op) {
    case Op::Lit:
      return n.value;
    case Op::Wt:
    case Op::Pos:
      return var_value(*n.var);
    case Op::Ite:
      return eval_node(*n.kids[0], m) ? eval_node(*n.kids[1], m) : eval_node(*n.kids[2], m);
    case Op::Sum: {
      std::int64_t s = 0;
      for (const auto& k : n.kids) s += eval_node(*k, m);
      return s;
    }
    case Op::Prod: {
      std::int64_t p = 1;
      for (const auto& k : n.kids) p *= eval_node(*k, m);
      return p;
    }
    case Op::True:
      return 1;
    case Op::False:
      return 0;
    case Op::Not:
      return eval_node(*n.kids[0], m) ? 0 : 1;
    case Op::And:
      for (const auto& k : n.kids)
        if (!eval_node(*k, m)) return 0;
      return 1;
    case Op::Or:
      for (const auto& k : n.kids)
        if (eval_node(*k, m)) return 1;
      return 0;
    case Op::Implies:
      return !eval_node(*n.kids[0], m) || eval_node(*n.kids[1], m);
    case Op::Ge:
      return eval_node(*n.kids[0], m) >= eval_node(*n.kids[1], m);
    case Op::Eq:
      return eval_node(*n.kids[0], m) == eval_node(*n.kids[1], m);
    case Op::Gt:
      return eval_node(*n.kids[0], m) > eval_node(*n.kids[1], m);
  }
  throw std::logic_error("unreachable formula op");
}

template <typename Fn>
void visit_dag(const NodePtr& root, Fn&& fn) {
  std::unordered_set<const FormulaNode*> seen;
  std::vector<const FormulaNode*> stack{root.get()};
  while (!stack.empty()) {
    const FormulaNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    fn(*n);
    for (const auto& k : n->kids) stack.push_back(k.get());
  }
}

std::string render(const FormulaNode& n) {
  auto joined = [&](const char* sep) {
    std::string out = "(";
    for (std::size_t i = 0; i < n.kids.size(); ++i) {
      if (i) out += sep;
      out += render(*n.kids[i]);
    }
    return out + ")";
  };
  switch (n.op) {
    case Op::Lit:
      return std::to_string(n.value);
    case Op::Wt:
    case Op::Pos:
      return n.var->to_string();
    case Op::Ite:
      return "ite(" + render(*n.kids[0]) + ", " + render(*n.kids[1]) + ", " + render(*n.kids[2]) + ")";
    case Op::Sum:
      return joined(" + ");
    case Op::Prod:
      return joined("*");
    case Op::True:
      return "true";
    case Op::False:
      return "false";
    case Op::Not:
      return "!" + render(*n.kids[0]);
    case Op::And:
      return joined(" & ");
    case Op::Or:
      return joined(" | ");
    case Op::Implies:
      return joined(" => ");
    case Op::Ge:
      return joined(" >= ");
    case Op::Eq:
      return joined(" = ");
    case Op::Gt:
      return joined(" > ");
  }
  throw std::logic_error("unreachable formula op");
}

}  // namespace

std::int64_t evaluate(const IntExpr& e, const Model& m) { return eval_node(*e.node(), m); }
bool evaluate(const BoolExpr& e, const Model& m) { return eval_node(*e.node(), m) != 0; }

std::set<VarRef> variables(const BoolExpr& e) {
  std::set<VarRef> out;
  visit_dag(e.node(), [&](const FormulaNode& n) {
    if (n.var) out.insert(*n.var);
  });
  return out;
}

bool is_linear(const BoolExpr& e) {
  bool linear = true;
  visit_dag(e.node(), [&](const FormulaNode& n) {
    if (n.op != Op::Prod) return;
    std::size_t symbolic = 0;
    for (const auto& k : n.kids)
      if (k->op != Op::Lit) ++symbolic;
    if (symbolic > 1) linear = false;
  });
  return linear;
}

std::string to_string(const IntExpr& e) { return render(*e.node()); }
std::string to_string(const BoolExpr& e) { return render(*e.node()); }

}  // namespace mproj

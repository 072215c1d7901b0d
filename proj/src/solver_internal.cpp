#include <algorithm>
#include <limits>
#include <unordered_map>
#include <vector>

#include "mproj/smt.hpp"

namespace mproj {

namespace {

struct Interval {
  std::int64_t lo;
  std::int64_t hi;
};

constexpr Interval kTrue{1, 1};
constexpr Interval kFalse{0, 0};
constexpr Interval kUnknown{0, 1};

// The formula DAG flattened so that children precede parents; evaluation is
// one forward pass.
struct Compiled {
  struct Node {
    Op op;
    std::int64_t value = 0;
    std::size_t slot = 0;  // variable slot for Pos/Wt
    std::vector<std::size_t> kids;
  };
  std::vector<Node> nodes;
};

struct Slots {
  std::vector<VarRef> pos;  // in name order
  std::vector<VarRef> wt;   // in name order
  std::vector<std::ptrdiff_t> wt_guard;  // index into pos, or -1 if Pos(f,i) is absent
  std::vector<std::size_t> wt_symbol;    // group id of the symbol, for the multiplicity bound
};

Compiled compile(const Formula& formula, const std::map<VarRef, std::size_t>& slot_of) {
  Compiled c;
  std::unordered_map<const FormulaNode*, std::size_t> index;
  std::vector<std::pair<const FormulaNode*, bool>> stack{{formula.node().get(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (index.contains(n)) continue;
    if (!expanded) {
      stack.emplace_back(n, true);
      for (const auto& k : n->kids)
        if (!index.contains(k.get())) stack.emplace_back(k.get(), false);
      continue;
    }
    Compiled::Node out{n->op, n->value, 0, {}};
    if (n->var) out.slot = slot_of.at(*n->var);
    for (const auto& k : n->kids) out.kids.push_back(index.at(k.get()));
    index.emplace(n, c.nodes.size());
    c.nodes.push_back(std::move(out));
  }
  return c;
}

std::int64_t clamp_mul(std::int64_t a, std::int64_t b) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max() / 4;
  const long double p = static_cast<long double>(a) * static_cast<long double>(b);
  if (p > kMax) return kMax;
  if (p < -kMax) return -kMax;
  return a * b;
}

class Search {
 public:
  Search(const Formula& formula, const InternalSolverConfig& config, const SolveContext& ctx)
      : config_(config), ctx_(ctx) {
    NameTable names;
    std::map<std::string, VarRef> ordered;
    for (const auto& v : variables(formula)) ordered.emplace(names.intern(v), v);

    std::map<VarRef, std::size_t> slot_of;
    for (const auto& [_, v] : ordered) {
      if (v.kind == VarKind::Pos) {
        slot_of[v] = slots_.pos.size();
        slots_.pos.push_back(v);
      }
    }
    std::map<Symbol, std::size_t> group;
    for (const auto& [_, v] : ordered) {
      if (v.kind != VarKind::Wt) continue;
      slot_of[v] = slots_.pos.size() + slots_.wt.size();
      slots_.wt.push_back(v);
      const VarRef guard{VarKind::Pos, v.symbol, v.index};
      auto it = slot_of.find(guard);
      slots_.wt_guard.push_back(it == slot_of.end() ? -1 : static_cast<std::ptrdiff_t>(it->second));
      slots_.wt_symbol.push_back(group.emplace(v.symbol, group.size()).first->second);
    }
    group_count_ = group.size();
    program_ = compile(formula, slot_of);
    values_.assign(program_.nodes.size(), kUnknown);
    pos_.assign(slots_.pos.size(), kUnknown);
    wt_.assign(slots_.wt.size(), Interval{1, config_.weight_bound});
  }

  SolveResult run() {
    SolveResult r;
    if (slots_.pos.size() > kInternalPosLimit) {
      r.status = SolveResult::Status::Unknown;
      r.diagnostic = "too large for internal solver: " + std::to_string(slots_.pos.size()) +
                     " position variables";
      return r;
    }
    const bool found = !ctx_.expired() && assign_pos(0);
    if (timed_out_ || (!found && ctx_.expired())) {
      r.status = SolveResult::Status::TimedOut;
      r.diagnostic = "internal search interrupted";
      return r;
    }
    if (!found) {
      r.status = SolveResult::Status::Unsat;
      return r;
    }
    r.status = SolveResult::Status::Sat;
    for (std::size_t i = 0; i < slots_.pos.size(); ++i) r.model.values[slots_.pos[i]] = pos_[i].lo;
    for (std::size_t i = 0; i < slots_.wt.size(); ++i) r.model.values[slots_.wt[i]] = wt_[i].lo;
    return r;
  }

 private:
  bool interrupted() {
    if ((++steps_ & 0xff) == 0 && ctx_.expired()) timed_out_ = true;
    return timed_out_;
  }

  bool active(std::size_t w) const {
    const auto g = slots_.wt_guard[w];
    return g < 0 || pos_[static_cast<std::size_t>(g)].lo == 1;
  }

  bool assign_pos(std::size_t k) {
    if (interrupted()) return false;
    if (k == pos_.size()) {
      for (std::size_t w = 0; w < wt_.size(); ++w)
        wt_[w] = active(w) ? Interval{1, config_.weight_bound} : Interval{1, 1};
      const bool found = assign_wt(0);
      if (!found)
        for (auto& w : wt_) w = Interval{1, config_.weight_bound};
      return found;
    }
    for (std::int64_t v : {0, 1}) {
      pos_[k] = Interval{v, v};
      for (std::size_t w = 0; w < wt_.size(); ++w)
        if (slots_.wt_guard[w] == static_cast<std::ptrdiff_t>(k))
          wt_[w] = v ? Interval{1, config_.weight_bound} : Interval{1, 1};
      if (feasible() && assign_pos(k + 1)) return true;
      if (timed_out_) return false;
    }
    pos_[k] = kUnknown;
    for (std::size_t w = 0; w < wt_.size(); ++w)
      if (slots_.wt_guard[w] == static_cast<std::ptrdiff_t>(k)) wt_[w] = Interval{1, config_.weight_bound};
    return false;
  }

  bool assign_wt(std::size_t k) {
    if (interrupted()) return false;
    while (k < wt_.size() && !active(k)) ++k;
    if (k == wt_.size()) return evaluate_root().lo == 1 && within_multiplicity();
    for (std::int64_t v = 1; v <= config_.weight_bound; ++v) {
      wt_[k] = Interval{v, v};
      if (within_multiplicity() && feasible() && assign_wt(k + 1)) return true;
      if (timed_out_) return false;
    }
    wt_[k] = Interval{1, config_.weight_bound};
    return false;
  }

  // Lower bounds of the active weights per symbol must fit the bound.
  bool within_multiplicity() const {
    std::vector<std::int64_t> total(group_count_, 0);
    for (std::size_t w = 0; w < wt_.size(); ++w) {
      const auto g = slots_.wt_guard[w];
      if (g >= 0 && pos_[static_cast<std::size_t>(g)].hi == 0) continue;
      if (g >= 0 && pos_[static_cast<std::size_t>(g)].lo == 0) continue;  // undecided
      total[slots_.wt_symbol[w]] += wt_[w].lo;
    }
    return std::all_of(total.begin(), total.end(),
                       [&](std::int64_t t) { return t <= config_.multiplicity_bound; });
  }

  bool feasible() { return evaluate_root().hi == 1; }

  Interval evaluate_root() {
    for (std::size_t i = 0; i < program_.nodes.size(); ++i) values_[i] = eval(program_.nodes[i]);
    return values_.back();
  }

  Interval eval(const Compiled::Node& n) const {
    auto kid = [&](std::size_t j) { return values_[n.kids[j]]; };
    switch (n.op) {
      case Op::Lit:
        return {n.value, n.value};
      case Op::Pos:
        return pos_[n.slot];
      case Op::Wt:
        return wt_[n.slot - pos_.size()];
      case Op::Ite: {
        const Interval c = kid(0);
        if (c.lo == 1) return kid(1);
        if (c.hi == 0) return kid(2);
        return {std::min(kid(1).lo, kid(2).lo), std::max(kid(1).hi, kid(2).hi)};
      }
      case Op::Sum: {
        Interval s{0, 0};
        for (std::size_t j = 0; j < n.kids.size(); ++j) {
          s.lo += kid(j).lo;
          s.hi += kid(j).hi;
        }
        return s;
      }
      case Op::Prod: {
        Interval p{1, 1};
        for (std::size_t j = 0; j < n.kids.size(); ++j) {
          const Interval k = kid(j);
          const std::int64_t c[4] = {clamp_mul(p.lo, k.lo), clamp_mul(p.lo, k.hi),
                                     clamp_mul(p.hi, k.lo), clamp_mul(p.hi, k.hi)};
          p = {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
        }
        return p;
      }
      case Op::True:
        return kTrue;
      case Op::False:
        return kFalse;
      case Op::Not:
        return {1 - kid(0).hi, 1 - kid(0).lo};
      case Op::And: {
        Interval r = kTrue;
        for (std::size_t j = 0; j < n.kids.size(); ++j) r = {std::min(r.lo, kid(j).lo), std::min(r.hi, kid(j).hi)};
        return r;
      }
      case Op::Or: {
        Interval r = kFalse;
        for (std::size_t j = 0; j < n.kids.size(); ++j) r = {std::max(r.lo, kid(j).lo), std::max(r.hi, kid(j).hi)};
        return r;
      }
      case Op::Implies:
        return {std::max(1 - kid(0).hi, kid(1).lo), std::max(1 - kid(0).lo, kid(1).hi)};
      case Op::Ge:
        if (kid(0).lo >= kid(1).hi) return kTrue;
        if (kid(0).hi < kid(1).lo) return kFalse;
        return kUnknown;
      case Op::Gt:
        if (kid(0).lo > kid(1).hi) return kTrue;
        if (kid(0).hi <= kid(1).lo) return kFalse;
        return kUnknown;
      case Op::Eq: {
        const Interval a = kid(0), b = kid(1);
        if (a.lo == a.hi && b.lo == b.hi && a.lo == b.lo) return kTrue;
        if (a.hi < b.lo || b.hi < a.lo) return kFalse;
        return kUnknown;
      }
    }
    return kUnknown;
  }

  const InternalSolverConfig& config_;
  const SolveContext& ctx_;
  Slots slots_;
  std::size_t group_count_ = 0;
  Compiled program_;
  std::vector<Interval> values_;
  std::vector<Interval> pos_;
  std::vector<Interval> wt_;
  std::size_t steps_ = 0;
  bool timed_out_ = false;
};

}  // namespace

SolveResult solve_internal(const Formula& formula, const InternalSolverConfig& config,
                           const SolveContext& ctx) {
  validate(SolverHandle{config});
  return Search(formula, config, ctx).run();
}

}  // namespace mproj

#include "mproj/projection.hpp"

#include <stdexcept>

namespace mproj {

std::string to_string(ProjectionMode mode) {
  switch (mode) {
    case ProjectionMode::Simple:
      return "simple";
    case ProjectionMode::Recursive:
      return "recursive";
    case ProjectionMode::Multi:
      return "multi";
  }
  throw std::logic_error("unreachable projection mode");
}

ProjectionMode parse_mode(std::string_view name) {
  if (name == "simple") return ProjectionMode::Simple;
  if (name == "recursive") return ProjectionMode::Recursive;
  if (name == "multi") return ProjectionMode::Multi;
  throw std::invalid_argument("unknown projection mode '" + std::string(name) + "'");
}

void Multiprojection::set(const Symbol& f, Multiset<std::size_t> indices) {
  for (const auto& [i, _] : indices.counts())
    if (i < 1 || i > f.arity)
      throw std::invalid_argument("projection index " + std::to_string(i) + " out of range for " +
                                  f.to_string());
  if (indices.empty())
    entries_.erase(f);
  else
    entries_[f] = std::move(indices);
}

const Multiset<std::size_t>& Multiprojection::of(const Symbol& f) const {
  static const Multiset<std::size_t> kEmpty;
  auto it = entries_.find(f);
  return it == entries_.end() ? kEmpty : it->second;
}

std::string Multiprojection::to_string() const {
  std::string out;
  for (const auto& [f, m] : entries_) {
    if (!out.empty()) out += "; ";
    out += f.to_string() + " -> {";
    bool first = true;
    for (const auto& [i, c] : m.counts()) {
      for (std::size_t k = 0; k < c; ++k) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
      }
    }
    out += "}";
  }
  return out.empty() ? "(empty)" : out;
}

Multiset<Term> apply_projection(const Multiprojection& pi, const Term& t) {
  Multiset<Term> out;
  if (t.is_var() || !pi.projects(t.symbol())) {
    out.add(t);
    return out;
  }
  for (const auto& [i, c] : pi.of(t.symbol()).counts()) {
    const Multiset<Term> sub = apply_projection(pi, t.args()[i - 1]);
    for (std::size_t k = 0; k < c; ++k) out += sub;
  }
  return out;
}

const Relation<Term>& superterm_relation() {
  static const Relation<Term> rel = [](const Term& v, const Term& u) { return strict_superterm(v, u); };
  return rel;
}

std::string to_string(const Multiset<Term>& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [t, c] : m.counts()) {
    for (std::size_t k = 0; k < c; ++k) {
      if (!first) out += ", ";
      out += t.to_string();
      first = false;
    }
  }
  return out + "}";
}

Verification verify_solution(const Multiprojection& pi, const std::vector<Rule>& pairs,
                             const std::vector<Rule>& rules) {
  Verification v;
  const auto& rel = superterm_relation();
  for (const auto& p : pairs) {
    const auto ps = apply_projection(pi, p.lhs);
    const auto pt = apply_projection(pi, p.rhs);
    if (ps == pt) continue;
    if (!mulex_canonical(ps, pt, rel)) {
      v.failure = "pair " + p.to_string() + " not weakly decreasing: " + to_string(ps) + " vs " +
                  to_string(pt);
      v.strict.clear();
      return v;
    }
    v.strict.push_back(p);
  }
  for (const auto& r : rules) {
    if (r.lhs.is_var() || !pi.projects(r.lhs.symbol())) continue;
    const auto pl = apply_projection(pi, r.lhs);
    const auto pr = apply_projection(pi, r.rhs);
    if (!mulex_or_equal(pl, pr, rel)) {
      v.failure = "rule " + r.to_string() + " not weakly decreasing: " + to_string(pl) + " vs " +
                  to_string(pr);
      v.strict.clear();
      return v;
    }
  }
  v.ok = true;
  return v;
}

}  // namespace mproj

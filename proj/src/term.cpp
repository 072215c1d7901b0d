#include "mproj/term.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace mproj {

struct Term::Node {
  bool is_var = false;
  std::string var_name;
  Symbol symbol;
  std::vector<Term> args;
  std::size_t size = 1;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->hash = mix(0x51ed27, std::hash<std::string>{}(name));
  node->var_name = std::move(name);
  return Term(std::move(node));
}

Term Term::app(Symbol f, std::vector<Term> args) {
  if (args.size() != f.arity)
    throw std::invalid_argument("arity mismatch for symbol " + f.to_string());
  auto node = std::make_shared<Node>();
  std::size_t h = mix(std::hash<std::string>{}(f.name), f.marked ? 1 : 2);
  for (const auto& a : args) {
    node->size += a.size();
    h = mix(h, a.hash());
  }
  node->hash = h;
  node->symbol = std::move(f);
  node->args = std::move(args);
  return Term(std::move(node));
}

bool Term::is_var() const { return node_->is_var; }
const std::string& Term::var_name() const { return node_->var_name; }
const Symbol& Term::symbol() const { return node_->symbol; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::hash() const { return node_->hash; }

std::string Term::to_string() const {
  if (is_var()) return var_name();
  std::string out = symbol().to_string();
  if (args().empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < args().size(); ++i) {
    if (i) out += ',';
    out += args()[i].to_string();
  }
  out += ')';
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_var() != b.is_var())
    return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_var()) return a.var_name() <=> b.var_name();
  if (auto c = a.symbol() <=> b.symbol(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {

void collect_subterms(const Term& t, std::vector<Term>& out, std::unordered_set<Term>& seen) {
  if (!seen.insert(t).second) return;
  out.push_back(t);
  for (const auto& a : t.args()) collect_subterms(a, out, seen);
}

}  // namespace

std::vector<Term> subterms(const Term& t) {
  std::vector<Term> out;
  std::unordered_set<Term> seen;
  collect_subterms(t, out, seen);
  return out;
}

std::vector<Term> subterms(const Term& s, const Term& t) {
  std::vector<Term> out;
  std::unordered_set<Term> seen;
  collect_subterms(s, out, seen);
  collect_subterms(t, out, seen);
  return out;
}

bool strict_superterm(const Term& v, const Term& u) {
  if (v.size() <= u.size()) return false;
  for (const auto& a : v.args())
    if (a == u || strict_superterm(a, u)) return true;
  return false;
}

std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.is_var()) {
      out.insert(u.var_name());
      return;
    }
    for (const auto& a : u.args()) walk(a);
  };
  walk(t);
  return out;
}

void collect_symbols(const Term& t, std::set<Symbol>& out) {
  if (t.is_var()) return;
  out.insert(t.symbol());
  for (const auto& a : t.args()) collect_symbols(a, out);
}

Term substitute(const Substitution& sigma, const Term& t) {
  if (t.is_var()) {
    auto it = sigma.find(t.var_name());
    return it == sigma.end() ? t : it->second;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(sigma, a));
  return Term::app(t.symbol(), std::move(args));
}

namespace {

bool occurs(const std::string& x, const Term& t) {
  if (t.is_var()) return t.var_name() == x;
  for (const auto& a : t.args())
    if (occurs(x, a)) return true;
  return false;
}

// Binds x to t in a triangular-free way: sigma stays idempotent.
void bind_var(Substitution& sigma, const std::string& x, const Term& t) {
  Substitution single{{x, t}};
  for (auto& [_, v] : sigma) v = substitute(single, v);
  sigma.emplace(x, t);
}

}  // namespace

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Substitution sigma;
  std::vector<std::pair<Term, Term>> work{{s, t}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    a = substitute(sigma, a);
    b = substitute(sigma, b);
    if (a == b) continue;
    if (!a.is_var() && b.is_var()) std::swap(a, b);
    if (a.is_var()) {
      if (occurs(a.var_name(), b)) return std::nullopt;
      bind_var(sigma, a.var_name(), b);
      continue;
    }
    if (a.symbol() != b.symbol()) return std::nullopt;
    for (std::size_t i = 0; i < a.args().size(); ++i) work.emplace_back(a.args()[i], b.args()[i]);
  }
  return sigma;
}

}  // namespace mproj

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace mproj {

// A function symbol. Marked symbols are the "sharp" tuple symbols introduced
// by the dependency pair construction; they print with a trailing '#', which
// cannot occur in a parsed identifier.
struct Symbol {
  std::string name;
  std::size_t arity = 0;
  bool marked = false;

  Symbol marked_version() const { return {name, arity, true}; }
  std::string to_string() const { return marked ? name + "#" : name; }

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

// Immutable first-order term with shared structure. Copies are cheap.
class Term {
 public:
  static Term var(std::string name);
  // Throws std::invalid_argument when args.size() != f.arity.
  static Term app(Symbol f, std::vector<Term> args = {});

  bool is_var() const;
  const std::string& var_name() const;
  const Symbol& symbol() const;
  std::span<const Term> args() const;

  // Number of nodes.
  std::size_t size() const;
  std::size_t hash() const;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Rule {
  Term lhs;
  Term rhs;

  std::string to_string() const { return lhs.to_string() + " -> " + rhs.to_string(); }
  friend bool operator==(const Rule&, const Rule&) = default;
  friend auto operator<=>(const Rule& a, const Rule& b) {
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    return a.rhs <=> b.rhs;
  }
};

struct TRS {
  std::vector<Rule> rules;
  std::set<Symbol> signature;
  std::set<std::string> variables;
};

using Substitution = std::map<std::string, Term>;

// All subterms of t including t, deduplicated, in pre-order of first occurrence.
std::vector<Term> subterms(const Term& t);
// Subterms of s followed by those of t not already listed.
std::vector<Term> subterms(const Term& s, const Term& t);

// u is a proper subterm of v.
bool strict_superterm(const Term& v, const Term& u);

std::set<std::string> variables(const Term& t);
void collect_symbols(const Term& t, std::set<Symbol>& out);

Term substitute(const Substitution& sigma, const Term& t);

// Most general unifier with occurs check; the result is idempotent.
std::optional<Substitution> unify(const Term& s, const Term& t);

}  // namespace mproj

template <>
struct std::hash<mproj::Term> {
  std::size_t operator()(const mproj::Term& t) const noexcept { return t.hash(); }
};

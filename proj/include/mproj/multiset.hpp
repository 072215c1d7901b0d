#pragma once

// Finite multisets and the multiset extension of a strict order.
//
// Three characterizations of M >mul N are provided and are expected to agree
// whenever the underlying relation is irreflexive and transitive:
//
//   mulex_bruteforce  the X/Y/Z definition, searched exhaustively (test oracle)
//   mulex_canonical   X = M - M∩N, Y = N - M∩N (maximal common part)
//   mulex_finite      the finite-domain "upper" characterization used by the
//                     SMT encoding
//
// Well-foundedness of finite strict orders is what makes the last two agree
// with the first; it is a proof device only and has no runtime counterpart.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mproj {

template <typename T>
class Multiset {
 public:
  using Counts = std::map<T, std::size_t>;

  Multiset() = default;
  Multiset(std::initializer_list<T> elems) {
    for (const auto& e : elems) add(e);
  }

  void add(const T& x, std::size_t count = 1) {
    if (count == 0) return;
    counts_[x] += count;
    size_ += count;
  }

  std::size_t multiplicity(const T& x) const {
    auto it = counts_.find(x);
    return it == counts_.end() ? 0 : it->second;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const Counts& counts() const { return counts_; }

  std::vector<T> distinct() const {
    std::vector<T> out;
    out.reserve(counts_.size());
    for (const auto& [x, _] : counts_) out.push_back(x);
    return out;
  }

  Multiset& operator+=(const Multiset& other) {
    for (const auto& [x, c] : other.counts_) add(x, c);
    return *this;
  }
  friend Multiset operator+(Multiset a, const Multiset& b) { return a += b; }

  // Saturating difference: (M - N)(x) = max(0, M(x) - N(x)).
  friend Multiset operator-(const Multiset& a, const Multiset& b) {
    Multiset out;
    for (const auto& [x, c] : a.counts_) {
      std::size_t d = b.multiplicity(x);
      if (c > d) out.add(x, c - d);
    }
    return out;
  }

  friend Multiset intersection(const Multiset& a, const Multiset& b) {
    Multiset out;
    for (const auto& [x, c] : a.counts_) out.add(x, std::min(c, b.multiplicity(x)));
    return out;
  }

  friend bool operator==(const Multiset& a, const Multiset& b) {
    return a.counts_ == b.counts_;
  }

 private:
  Counts counts_;
  std::size_t size_ = 0;
};

template <typename T>
using Relation = std::function<bool(const T&, const T&)>;

template <typename T>
std::size_t multiplicity(const Multiset<T>& m, const T& x) {
  return m.multiplicity(x);
}

// Irreflexivity and transitivity of `rel` restricted to `carrier`.
template <typename T>
bool check_strict_order(const std::vector<T>& carrier, const Relation<T>& rel) {
  for (const auto& a : carrier) {
    if (rel(a, a)) return false;
    for (const auto& b : carrier) {
      if (!rel(a, b)) continue;
      for (const auto& c : carrier)
        if (rel(b, c) && !rel(a, c)) return false;
    }
  }
  return true;
}

namespace detail {

// ∀y∈Y ∃x∈X. x rel y
template <typename T>
bool dominates(const Multiset<T>& x, const Multiset<T>& y, const Relation<T>& rel) {
  for (const auto& [b, _] : y.counts()) {
    bool covered = false;
    for (const auto& [a, __] : x.counts()) {
      if (rel(a, b)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace detail

inline constexpr std::size_t kBruteforceLimit = 12;

// Exhaustive search over the common part Z. Only sub-multisets of M∩N need to
// be tried: any witness can be normalized to one of those.
template <typename T>
bool mulex_bruteforce(const Multiset<T>& m, const Multiset<T>& n, const Relation<T>& rel) {
  if (m.size() + n.size() > kBruteforceLimit)
    throw std::invalid_argument("mulex_bruteforce: |M|+|N| exceeds enumeration limit");

  const Multiset<T> common = intersection(m, n);
  std::vector<std::pair<T, std::size_t>> slots(common.counts().begin(), common.counts().end());
  std::vector<std::size_t> pick(slots.size(), 0);

  while (true) {
    Multiset<T> z;
    for (std::size_t i = 0; i < slots.size(); ++i) z.add(slots[i].first, pick[i]);
    Multiset<T> x = m - z;
    Multiset<T> y = n - z;
    if (!x.empty() && detail::dominates(x, y, rel)) return true;

    std::size_t i = 0;
    while (i < slots.size() && pick[i] == slots[i].second) pick[i++] = 0;
    if (i == slots.size()) return false;
    ++pick[i];
  }
}

template <typename T>
bool mulex_canonical(const Multiset<T>& m, const Multiset<T>& n, const Relation<T>& rel) {
  const Multiset<T> common = intersection(m, n);
  const Multiset<T> x = m - common;
  const Multiset<T> y = n - common;
  return !x.empty() && detail::dominates(x, y, rel);
}

// Condition (∀d∈D. upper(d) ⟹ M(d) ≥ N(d)) ∧ M ≠ N, where
// upper(x) iff ∀d∈D. d rel x ⟹ M(d) = N(d).
template <typename T>
bool mulex_finite(const Multiset<T>& m, const Multiset<T>& n, const std::vector<T>& domain,
                  const Relation<T>& rel) {
  std::set<T> in_domain(domain.begin(), domain.end());
  for (const auto* side : {&m, &n})
    for (const auto& [x, _] : side->counts())
      if (!in_domain.contains(x))
        throw std::invalid_argument("mulex_finite: multiset element outside domain");

  if (m == n) return false;
  for (const auto& d : in_domain) {
    bool upper = true;
    for (const auto& e : in_domain) {
      if (rel(e, d) && m.multiplicity(e) != n.multiplicity(e)) {
        upper = false;
        break;
      }
    }
    if (upper && m.multiplicity(d) < n.multiplicity(d)) return false;
  }
  return true;
}

// M >=mul N: strictly greater or equal.
template <typename T>
bool mulex_or_equal(const Multiset<T>& m, const Multiset<T>& n, const Relation<T>& rel) {
  return m == n || mulex_canonical(m, n, rel);
}

}  // namespace mproj

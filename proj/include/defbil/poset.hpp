#pragma once

// Finite posets as boolean leq matrices, with the usual constructions.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "defbil/bits.hpp"
#include "defbil/errors.hpp"

namespace defbil {

struct PosetViolation {
  enum class Kind { reflexivity, antisymmetry, transitivity, shape } kind;
  std::size_t a = 0, b = 0, c = 0;

  std::string describe(const std::vector<std::string>* names = nullptr) const {
    auto nm = [&](std::size_t i) { return names && i < names->size() ? (*names)[i] : std::to_string(i); };
    switch (kind) {
      case Kind::reflexivity: return "not reflexive at " + nm(a);
      case Kind::antisymmetry: return "not antisymmetric: " + nm(a) + " <= " + nm(b) + " <= " + nm(a);
      case Kind::transitivity: return "not transitive: " + nm(a) + " <= " + nm(b) + " <= " + nm(c) + " but not " +
                                      nm(a) + " <= " + nm(c);
      case Kind::shape: return "relation matrix is not square";
    }
    return "?";
  }
};

/// First failure of reflexivity, antisymmetry or transitivity, if any.
inline std::optional<PosetViolation> check_poset(const BitMatrix& rel) {
  using K = PosetViolation::Kind;
  const std::size_t n = rel.rows();
  if (rel.cols() != n) return PosetViolation{K::shape};
  for (std::size_t a = 0; a < n; ++a)
    if (!rel(a, a)) return PosetViolation{K::reflexivity, a};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (rel(a, b) && rel(b, a)) return PosetViolation{K::antisymmetry, a, b};
  for (std::size_t a = 0; a < n; ++a) {
    std::optional<PosetViolation> bad;
    rel.row(a).for_each([&](std::size_t b) {
      if (bad) return;
      Bitset missing = rel.row(b) - rel.row(a);
      if (missing.any()) bad = PosetViolation{K::transitivity, a, b, missing.first()};
    });
    if (bad) return bad;
  }
  return std::nullopt;
}

/// Reflexive-transitive closure (Warshall).
inline BitMatrix reflexive_transitive_closure(BitMatrix m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m(i, k)) m.row(i) |= m.row(k);
  return m;
}

class Poset {
 public:
  Poset() = default;
  /// Throws InvalidInput unless `leq` is a partial order.
  Poset(std::vector<std::string> names, BitMatrix leq) : names_(std::move(names)), leq_(std::move(leq)) {
    if (leq_.rows() != names_.size()) throw InvalidInput("poset: name count does not match relation");
    if (auto v = check_poset(leq_)) throw InvalidInput("poset: " + v->describe(&names_));
    geq_ = leq_.transpose();
  }

  static Poset from_pairs(std::vector<std::string> names, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                          bool close = false) {
    BitMatrix m(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) m.set(i, i);
    for (auto [a, b] : pairs) {
      if (a >= names.size() || b >= names.size()) throw InvalidInput("poset: pair index out of range");
      m.set(a, b);
    }
    if (close) m = reflexive_transitive_closure(std::move(m));
    return Poset(std::move(names), std::move(m));
  }

  std::size_t size() const { return names_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return leq_(a, b); }
  bool lt(std::size_t a, std::size_t b) const { return a != b && leq_(a, b); }
  bool comparable(std::size_t a, std::size_t b) const { return leq_(a, b) || leq_(b, a); }
  const BitMatrix& matrix() const { return leq_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  /// Up-set and down-set of a single point, as rows of the order matrices.
  const Bitset& up(std::size_t a) const { return leq_.row(a); }
  const Bitset& down(std::size_t a) const { return geq_.row(a); }

  Bitset up_closure(const Bitset& s) const {
    Bitset r(size());
    s.for_each([&](std::size_t i) { r |= up(i); });
    return r;
  }
  Bitset down_closure(const Bitset& s) const {
    Bitset r(size());
    s.for_each([&](std::size_t i) { r |= down(i); });
    return r;
  }
  bool is_downset(const Bitset& s) const { return down_closure(s) == s; }
  bool is_upset(const Bitset& s) const { return up_closure(s) == s; }

  /// Covering pairs (a, b): a < b with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a)
      up(a).for_each([&](std::size_t b) {
        if (b == a) return;
        Bitset between = up(a) & down(b);
        if (between.count() == 2) out.emplace_back(a, b);
      });
    return out;
  }

  Bitset minimal(const Bitset& within) const {
    Bitset r(size());
    within.for_each([&](std::size_t a) {
      if ((down(a) & within).count() == 1) r.set(a);
    });
    return r;
  }
  Bitset maximal(const Bitset& within) const {
    Bitset r(size());
    within.for_each([&](std::size_t a) {
      if ((up(a) & within).count() == 1) r.set(a);
    });
    return r;
  }
  Bitset minimal() const { return minimal(Bitset::full(size())); }
  Bitset maximal() const { return maximal(Bitset::full(size())); }

  /// Connected components of the comparability graph restricted to `within`.
  std::vector<Bitset> components(const Bitset& within) const {
    std::vector<Bitset> out;
    Bitset left = within;
    while (left.any()) {
      Bitset comp(size());
      Bitset frontier(size());
      frontier.set(left.first());
      while (frontier.any()) {
        comp |= frontier;
        Bitset next(size());
        frontier.for_each([&](std::size_t a) { next |= (up(a) | down(a)); });
        next &= left;
        next -= comp;
        frontier = std::move(next);
      }
      left -= comp;
      out.push_back(std::move(comp));
    }
    return out;
  }
  std::vector<Bitset> components() const { return components(Bitset::full(size())); }

  /// Induced subposet; the returned vector maps new indices to old.
  std::pair<Poset, std::vector<std::size_t>> restrict_to(const Bitset& s) const {
    std::vector<std::size_t> idx = s.indices();
    BitMatrix m(idx.size());
    std::vector<std::string> nm;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      nm.push_back(names_[idx[i]]);
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (leq_(idx[i], idx[j])) m.set(i, j);
    }
    return {Poset(std::move(nm), std::move(m)), std::move(idx)};
  }

  friend bool operator==(const Poset& a, const Poset& b) { return a.names_ == b.names_ && a.leq_ == b.leq_; }

 private:
  std::vector<std::string> names_;
  BitMatrix leq_;
  BitMatrix geq_;
};

inline Poset dual(const Poset& p) { return Poset(p.names(), p.matrix().transpose()); }

inline Poset antichain(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("a" + std::to_string(i));
  return Poset(std::move(names), BitMatrix::identity(m));
}

/// The m-element chain 0 < 1 < ... < m-1.
inline Poset chain(std::size_t m) {
  std::vector<std::string> names;
  BitMatrix leq(m);
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back("c" + std::to_string(i));
    for (std::size_t j = i; j < m; ++j) leq.set(i, j);
  }
  return Poset(std::move(names), std::move(leq));
}

namespace detail {
inline std::vector<std::string> tagged_names(const Poset& p, const Poset& q) {
  std::vector<std::string> out;
  for (const auto& s : p.names()) out.push_back("L." + s);
  for (const auto& s : q.names()) out.push_back("R." + s);
  return out;
}
}  // namespace detail

/// p then q side by side, no comparabilities between them.
inline Poset disjoint_union(const Poset& p, const Poset& q) {
  const std::size_t a = p.size(), sz = p.size() + q.size();
  BitMatrix m(sz);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j) m.set(i, j, p.leq(i, j));
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) m.set(a + i, a + j, q.leq(i, j));
  return Poset(detail::tagged_names(p, q), std::move(m));
}

/// Every element of p below every element of q.
inline Poset linear_sum(const Poset& p, const Poset& q) {
  const std::size_t a = p.size(), sz = p.size() + q.size();
  BitMatrix m(sz);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < a; ++j) m.set(i, j, p.leq(i, j));
    for (std::size_t j = a; j < sz; ++j) m.set(i, j);
  }
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) m.set(a + i, a + j, q.leq(i, j));
  return Poset(detail::tagged_names(p, q), std::move(m));
}

/// Coordinatewise order; index i*|q| + j holds (p_i, q_j).
inline Poset direct_product(const Poset& p, const Poset& q) {
  const std::size_t sz = p.size() * q.size();
  BitMatrix m(sz);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      names.push_back("(" + p.name(i) + "," + q.name(j) + ")");
      for (std::size_t k = 0; k < p.size(); ++k)
        for (std::size_t l = 0; l < q.size(); ++l)
          if (p.leq(i, k) && q.leq(j, l)) m.set(i * q.size() + j, k * q.size() + l);
    }
  return Poset(std::move(names), std::move(m));
}

/// The grid 2 x m.
inline Poset grid(std::size_t m) { return direct_product(chain(2), chain(m)); }

}  // namespace defbil
